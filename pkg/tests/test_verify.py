
import pytest

from polycat import _kernels
from polycat.scenario import parse_scenario, preset
from polycat.verify import check_cat_constants, verify, verify_scenario


@pytest.fixture(scope="module")
def report():
    return verify(run_all=True)


def test_all_presets_pass(report):
    failed = [(s["scenario"], c["name"]) for s in report["suites"] for c in s["checks"] if not c["passed"]]
    assert failed == []
    assert report["passed"]
    assert report["backend"] == _kernels.BACKEND


def test_report_covers_every_check(report):
    names = {c["name"] for s in report["suites"] for c in s["checks"]}
    assert {"wigner_oracle", "rotation_symmetry", "mirror_symmetry", "four_kernel_wigner", "tomogram_two_route",
            "radon_consistency", "tomogram_normalization", "gram_orthogonality",
            "cat_normalization_constants"} <= names


def test_negated_kernel_is_caught(monkeypatch):
    real_sum = _kernels.wigner_sum
    monkeypatch.setattr(_kernels, "wigner_sum", lambda *a: -real_sum(*a))
    suite = verify_scenario(preset("cyclic4_wigner"))
    by_name = {c["name"]: c for c in suite["checks"]}
    assert not by_name["wigner_oracle"]["passed"]
    # the tomogram routes do not use the Wigner kernel
    assert by_name["tomogram_two_route"]["passed"]


def test_perturbed_tomogram_is_caught(monkeypatch):
    real_sum = _kernels.tomogram_pair_sum
    monkeypatch.setattr(_kernels, "tomogram_pair_sum", lambda *a: 1.001 * real_sum(*a))
    by_name = {c["name"]: c for c in verify_scenario(preset("dihedral4_tomogram"))["checks"]}
    assert not by_name["tomogram_two_route"]["passed"]
    assert not by_name["tomogram_normalization"]["passed"]


def test_cat_constants_check():
    check = check_cat_constants()
    assert check.passed and check.worst_error < 1e-14


def test_failed_construction_is_reported():
    suite = verify_scenario(parse_scenario("kind=cyclic n=3 lambda=2 alpha=0"))
    assert suite["checks"][0]["name"] == "construct_state"
    assert suite["checks"][0]["worst_error"] is None
