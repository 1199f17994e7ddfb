"""Scenario files: whitespace-separated ``key=value`` tokens, ``#`` comments.

Example::

    kind=cyclic n=4 lambda=1
    a=1 b=1.4142135624+1.4142135624i
    nx=101 np=101 x_min=-5 x_max=5
    outputs=wigner:csv,wigner:image

Complex numbers are written ``re+imi`` (``1.0-2.5i``, ``2``, ``3i``).
Defaults: s=1, hbar=1, phase-space grid 201x201 over [-6, 6]^2, tomogram grid
201 X values over [-6, 6] and 201 angles over [0, pi].
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ParseError, RangeError, ValidationError
from .groups import KINDS, GroupSpec, SeedGaussian, symmetric_state
from .tomogram import TomogramGrid
from .wigner import PhaseSpaceGrid

TARGETS = ("wigner", "tomogram", "gram", "verify")
FORMATS = ("csv", "image", "json")

_PHASE_KEYS = {"x_min": "x_min", "x_max": "x_max", "p_min": "p_min", "p_max": "p_max",
               "nx": "nx", "np": "n_p", "hbar": "hbar"}
_TOMO_KEYS = {"X_min": "X_min", "X_max": "X_max", "nX": "nX", "theta_min": "theta_min",
              "theta_max": "theta_max", "ntheta": "ntheta", "s": "s"}
_INT_KEYS = {"n", "lambda", "nx", "np", "nX", "ntheta"}
_COMPLEX_KEYS = {"a", "b", "alpha"}
_FLOAT_KEYS = {"x_min", "x_max", "p_min", "p_max", "hbar", "X_min", "X_max", "theta_min", "theta_max", "s"}
KEYS = ("kind", "n", "lambda", "a", "b", "alpha", "outputs", *_PHASE_KEYS, *_TOMO_KEYS)
REQUIRED = ("kind", "n", "lambda", "a or alpha")


@dataclass(frozen=True)
class Scenario:
    group: GroupSpec
    seed: SeedGaussian | None = None
    alpha: complex | None = None
    phase_grid: PhaseSpaceGrid = field(default_factory=PhaseSpaceGrid)
    tomo_grid: TomogramGrid = field(default_factory=TomogramGrid)
    outputs: tuple = ()

    def __post_init__(self):
        if (self.seed is None) == (self.alpha is None):
            raise ValidationError("give exactly one seed: raw (a, b) or coherent alpha")

    def seed_gaussian(self) -> SeedGaussian:
        return self.seed if self.alpha is None else SeedGaussian.coherent(self.alpha)

    def state(self):
        return symmetric_state(self.seed_gaussian(), self.group)


def parse_complex(text: str) -> complex:
    t = text.strip()
    if t.endswith(("i", "I")) and not t.lower().endswith("inf"):
        t = t[:-1] + "j"
    return complex(t)


def format_complex(z: complex) -> str:
    z = complex(z)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def _convert(key, raw, where):
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _COMPLEX_KEYS:
            return parse_complex(raw)
    except ValueError:
        kind = "integer" if key in _INT_KEYS else "real" if key in _FLOAT_KEYS else "complex"
        raise ParseError(f"{where}: field {key!r}: cannot read {raw!r} as {kind}") from None
    if key == "outputs":
        outs = []
        for item in filter(None, raw.split(",")):
            target, _, fmt = item.partition(":")
            outs.append((target, fmt or "csv"))
        return tuple(outs)
    return raw


def _tokens(text):
    for lineno, line in enumerate(text.splitlines(), start=1):
        for token in line.split("#", 1)[0].split():
            yield lineno, token


def parse_scenario(text: str) -> Scenario:
    """Parse and validate scenario text.

    Raises ParseError for malformed or incomplete text and ValidationError for
    values that parse but violate a range or consistency rule.
    """
    values, where = {}, {}
    for lineno, token in _tokens(text):
        loc = f"line {lineno}"
        key, eq, raw = token.partition("=")
        if not eq or not key or not raw:
            raise ParseError(f"{loc}: expected key=value, got {token!r}")
        if key not in KEYS:
            raise ParseError(f"{loc}: unknown field {key!r}; known fields: {', '.join(KEYS)}")
        if key in values:
            raise ParseError(f"{loc}: field {key!r} repeated (first on {where[key]})")
        values[key] = _convert(key, raw, loc)
        where[key] = loc

    _validate_ranges(values, where)
    missing = [k for k in ("kind", "n", "lambda") if k not in values]
    if "a" not in values and "alpha" not in values:
        missing.append("a or alpha")
    if missing:
        raise ParseError(f"missing required fields: {', '.join(missing)} (required: {', '.join(REQUIRED)})")

    group = GroupSpec(values["kind"], values["n"], values["lambda"])
    seed = alpha = None
    if "alpha" in values:
        alpha = values["alpha"]
    else:
        seed = SeedGaussian(values["a"], values.get("b", 0j))
    try:
        phase = PhaseSpaceGrid(**{attr: values[k] for k, attr in _PHASE_KEYS.items() if k in values})
        tomo = TomogramGrid(**{attr: values[k] for k, attr in _TOMO_KEYS.items() if k in values})
    except RangeError as exc:
        raise ValidationError(str(exc)) from None
    return Scenario(group, seed, alpha, phase, tomo, values.get("outputs", ()))


def _validate_ranges(values, where):
    def fail(key, msg):
        raise ValidationError(f"{where[key]}: field {key!r}: {msg}")

    if "kind" in values and values["kind"] not in KINDS:
        fail("kind", f"must be one of {', '.join(KINDS)}")
    if "n" in values and values["n"] < 1:
        fail("n", "group order must be >= 1")
    if "lambda" in values:
        upper = values.get("n")
        if values["lambda"] < 1 or (upper is not None and upper >= 1 and values["lambda"] > upper):
            fail("lambda", f"must lie in [1, n={upper}]")
    if "alpha" in values and ("a" in values or "b" in values):
        fail("alpha", "give either a/b or alpha, not both")
    if "b" in values and "a" not in values:
        fail("b", "b given without a")
    if "a" in values and not values["a"].real > 0:
        fail("a", "Re(a) must be positive")
    for key in ("nx", "np", "nX"):
        if key in values and values[key] < 2:
            fail(key, "needs at least 2 points")
    if "ntheta" in values and values["ntheta"] < 1:
        fail("ntheta", "needs at least 1 angle")
    for key in ("s", "hbar"):
        if key in values and not values[key] > 0:
            fail(key, "must be positive")
    for target, fmt in values.get("outputs", ()):
        if target not in TARGETS:
            fail("outputs", f"unknown target {target!r}")
        if fmt not in FORMATS:
            fail("outputs", f"unknown format {fmt!r}")


def serialize_scenario(scenario: Scenario) -> str:
    """Canonical text; ``parse_scenario(serialize_scenario(s)) == s``."""
    g = scenario.group
    lines = [f"kind={g.kind} n={g.n} lambda={g.lam}"]
    if scenario.alpha is not None:
        lines.append(f"alpha={format_complex(scenario.alpha)}")
    else:
        lines.append(f"a={format_complex(scenario.seed.a)} b={format_complex(scenario.seed.b)}")
    pg, tg = scenario.phase_grid, scenario.tomo_grid
    lines.append(" ".join(f"{k}={getattr(pg, attr)!r}" for k, attr in _PHASE_KEYS.items()))
    lines.append(" ".join(f"{k}={getattr(tg, attr)!r}" for k, attr in _TOMO_KEYS.items()))
    if scenario.outputs:
        lines.append("outputs=" + ",".join(f"{t}:{f}" for t, f in scenario.outputs))
    return "\n".join(lines) + "\n"


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())


SQRT2 = math.sqrt(2.0)

#: Parameter sets of the published figures, keyed by what they show.
PRESETS = {
    "cyclic4_wigner": f"kind=cyclic n=4 lambda=1 a=1 b={SQRT2!r}+{SQRT2!r}i",
    "cyclic5_wigner": f"kind=cyclic n=5 lambda=1 a=2 b={SQRT2!r}-{SQRT2!r}i",
    "dihedral4_wigner": f"kind=dihedral n=4 lambda=2 a=1 b={SQRT2!r}+{SQRT2!r}i",
    "dihedral5_wigner": f"kind=dihedral n=5 lambda=2 a=2 b={SQRT2!r}-{SQRT2!r}i",
    "cyclic4_tomogram": "kind=cyclic n=4 lambda=2 a=2 b=2+2i s=1",
    "cyclic5_tomogram": "kind=cyclic n=5 lambda=3 a=2 b=0+2i s=1",
    "dihedral4_tomogram": "kind=dihedral n=4 lambda=4 a=1 b=0.5 s=1",
    "dihedral5_tomogram": "kind=dihedral n=5 lambda=5 a=1 b=1 s=1",
}


def preset(name: str) -> Scenario:
    return parse_scenario(PRESETS[name])
