"""Image export to CSV and 8-bit PGM rasters.

CSV layout:

    # functional k delta n1 n2 x1lo x1hi x2lo x2hi
    # <values>
    x1,x2,value          one row per sampling point, x1 index outermost

PGM layout: binary P5, width n1, height n2, maxval 255, pixel = round(255 v).
Row 0 of the raster is the largest x2, so the picture is upright.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Union

import numpy as np

from ..core.errors import SchemaError
from ..core.models import IndicatorImage, SamplingGrid

logger = logging.getLogger(__name__)

EXPORT_FORMATS = ("csv", "pgm")
CSV_FIELDS = ("functional", "k", "delta", "n1", "n2", "x1lo", "x1hi", "x2lo", "x2hi")


def image_to_csv(image: IndicatorImage) -> str:
    """Render an image as CSV text."""
    grid = image.grid
    header_values = (
        image.functional,
        repr(float(image.k)),
        repr(float(image.delta)),
        str(grid.n1),
        str(grid.n2),
        repr(float(grid.x1_range[0])),
        repr(float(grid.x1_range[1])),
        repr(float(grid.x2_range[0])),
        repr(float(grid.x2_range[1])),
    )
    a1, a2 = grid.axes()
    lines = ["# " + " ".join(CSV_FIELDS), "# " + " ".join(header_values), "x1,x2,value"]
    for i1 in range(grid.n1):
        x1 = repr(float(a1[i1]))
        for i2 in range(grid.n2):
            lines.append(f"{x1},{float(a2[i2])!r},{float(image.values[i1, i2])!r}")
    return "\n".join(lines) + "\n"


def image_to_pgm(image: IndicatorImage) -> bytes:
    """Render an image as a binary PGM raster."""
    values = np.clip(image.values, 0.0, 1.0)
    pixels = np.rint(255.0 * values).astype(np.uint8)
    # [i1, i2] -> rows of constant x2, top row = largest x2
    raster = pixels.T[::-1, :]
    header = f"P5\n{image.grid.n1} {image.grid.n2}\n255\n".encode("ascii")
    return header + raster.tobytes()


def export_image(image: IndicatorImage, path: Union[str, Path], fmt: str = "csv") -> Path:
    """Write a normalized image in the given format ("csv" or "pgm").

    Args:
        image: A normalized image.
        path: Output file path.
        fmt: Output format.

    Returns:
        The written path.

    Raises:
        ValueError: If the format is unknown or the image is not normalized.
    """
    if fmt not in EXPORT_FORMATS:
        raise ValueError(f"Unknown image format '{fmt}', expected one of {', '.join(EXPORT_FORMATS)}")
    if not image.normalized:
        raise ValueError("Only normalized images can be exported")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        path.write_text(image_to_csv(image))
    else:
        path.write_bytes(image_to_pgm(image))
    logger.info("Wrote %s image %s", image.functional, path)
    return path


def load_image_csv(path: Union[str, Path]) -> IndicatorImage:
    """Read an image written by export_image in CSV format.

    Raises:
        SchemaError: If the file does not match the layout.
    """
    lines = Path(path).read_text().splitlines()
    if len(lines) < 3 or lines[0].lstrip("#").split() != list(CSV_FIELDS):
        raise SchemaError("unexpected header field names", field="header", line=1)
    tokens = lines[1].lstrip("#").split()
    if len(tokens) != len(CSV_FIELDS):
        raise SchemaError(f"expected {len(CSV_FIELDS)} header values, found {len(tokens)}", field="header", line=2)
    header = dict(zip(CSV_FIELDS, tokens))
    try:
        n1, n2 = int(header["n1"]), int(header["n2"])
        grid = SamplingGrid(
            x1_range=(float(header["x1lo"]), float(header["x1hi"])),
            x2_range=(float(header["x2lo"]), float(header["x2hi"])),
            n1=n1,
            n2=n2,
        )
        k, delta = float(header["k"]), float(header["delta"])
    except ValueError as exc:
        raise SchemaError(str(exc), field="header", line=2) from None

    rows = [line for line in lines[3:] if line.strip()]
    if len(rows) != n1 * n2:
        raise SchemaError(f"found {len(rows)} rows, header declares {n1} x {n2}", field="n1", line=2)
    values = np.empty(n1 * n2)
    for offset, row in enumerate(rows):
        cells = row.split(",")
        if len(cells) != 3:
            raise SchemaError(f"expected 3 columns, found {len(cells)}", field="value", line=offset + 4)
        try:
            values[offset] = float(cells[2])
        except ValueError:
            raise SchemaError(f"cannot parse '{cells[2]}'", field="value", line=offset + 4) from None

    return IndicatorImage(
        grid=grid,
        values=values.reshape(n1, n2),
        functional=header["functional"],
        k=k,
        delta=delta,
        normalized=True,
    )
