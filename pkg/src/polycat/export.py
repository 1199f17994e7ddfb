"""CSV and PNG export of evaluated grids."""
from __future__ import annotations

import io
import json
import os

import numpy as np

from .tomogram import RADON_CONVENTION
from .wigner import FieldGrid


def _fmt(v) -> str:
    return f"{float(v):.17g}"


def csv_text(field: FieldGrid, scenario_text: str | None = None) -> str:
    """Header of ``#`` comment lines, then one ``a0,a1,value`` row per grid point.

    Rows are ordered with the second axis varying fastest. Output depends only
    on the values and metadata, never on how they were computed.
    """
    (n0, a0), (n1, a1) = field.axes
    head = [
        "# polycat field grid",
        f"# target={field.target} provenance={field.provenance}",
        f"# columns={n0},{n1},value",
        f"# shape={a0.size}x{a1.size}",
        f"# axis {n0}: min={_fmt(a0[0])} max={_fmt(a0[-1])} n={a0.size}",
        f"# axis {n1}: min={_fmt(a1[0])} max={_fmt(a1[-1])} n={a1.size}",
        "# conventions: hbar=1 " + " ".join(f"{k}={v.replace(' ', '')}" for k, v in RADON_CONVENTION.items()),
    ]
    for key in sorted(field.meta):
        head.append(f"# meta {key}={field.meta[key]!r}")
    if scenario_text:
        head.extend(f"# scenario: {line}" for line in scenario_text.strip().splitlines())
    col0 = [_fmt(v) for v in a0]
    col1 = [_fmt(v) for v in a1]
    rows = []
    for i, c0 in enumerate(col0):
        vals = field.values[i]
        rows.extend(f"{c0},{c1},{_fmt(v)}" for c1, v in zip(col1, vals))
    return "\n".join(head + rows) + "\n"


def export_csv(field: FieldGrid, destination, scenario_text: str | None = None) -> None:
    """Write :func:`csv_text` with LF line endings to a path or binary/text stream."""
    data = csv_text(field, scenario_text).encode("utf-8")
    if isinstance(destination, (str, os.PathLike)):
        with open(destination, "wb") as fh:
            fh.write(data)
    elif isinstance(destination, io.TextIOBase):
        destination.write(data.decode("utf-8"))
    else:
        destination.write(data)


def render_heatmap(field: FieldGrid, destination, cmap: str = "RdBu_r") -> None:
    """PNG with one pixel per grid cell and a diverging map centred on zero.

    The first axis runs left to right and the second bottom to top. Axis ranges
    and the colour scale go into the PNG text metadata.
    """
    from matplotlib import image as mpimg

    values = field.values
    vmax = float(np.abs(values).max())
    if vmax == 0.0:
        vmax = 1.0
    (n0, a0), (n1, a1) = field.axes
    meta = {
        "Software": "polycat",
        "Title": f"{field.target} ({field.provenance})",
        "Description": json.dumps(
            {
                "horizontal": [n0, float(a0[0]), float(a0[-1]), int(a0.size)],
                "vertical": [n1, float(a1[0]), float(a1[-1]), int(a1.size)],
                "vmin": -vmax,
                "vmax": vmax,
                "cmap": cmap,
            },
            sort_keys=True,
        ),
    }
    mpimg.imsave(destination, values.T[::-1], vmin=-vmax, vmax=vmax, cmap=cmap, format="png", metadata=meta)
