"""Reading and writing Cauchy datasets.

Binary layout (little-endian), version 1:

    magic            4s   b"OSMD"
    version          u16  1
    k                f8
    radius           f8
    n_receivers      u32
    aperture_lo      f8
    aperture_hi      f8
    n_directions     u32
    d_aperture_lo    f8
    d_aperture_hi    f8
    has_du           u8
    noise_level      f8
    U                n_receivers * n_directions complex128, row-major
    dU               same, present only when has_du = 1

CSV layout, for inspection:

    # k R n_x n_d aperture_lo aperture_hi d_aperture_lo d_aperture_hi has_du
    # <values>
    rx_index,dir_index,u_re,u_im,du_re,du_im
"""

from __future__ import annotations

import logging
import struct
from pathlib import Path
from typing import Union

import numpy as np

from ..core.errors import SchemaError
from ..core.models import CauchyDataset, MeasurementCircle

logger = logging.getLogger(__name__)

MAGIC = b"OSMD"
VERSION = 1
HEADER = struct.Struct("<4sHddIddIddBd")
COMPLEX = np.dtype("<c16")

CSV_FIELDS = ("k", "R", "n_x", "n_d", "aperture_lo", "aperture_hi", "d_aperture_lo", "d_aperture_hi", "has_du")
CSV_COLUMNS = ("rx_index", "dir_index", "u_re", "u_im", "du_re", "du_im")


def save_dataset(dataset: CauchyDataset, path: Union[str, Path]) -> Path:
    """Write a dataset; files ending in .csv use the CSV layout, others the binary one."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if path.suffix.lower() == ".csv":
        _save_csv(dataset, path)
    else:
        _save_binary(dataset, path)
    logger.info("Wrote dataset %s", path)
    return path


def load_dataset(path: Union[str, Path]) -> CauchyDataset:
    """Read a dataset written by save_dataset.

    Raises:
        SchemaError: If the file does not match its declared layout.
        OSError: If the file cannot be read.
    """
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return _load_csv(path)
    return _load_binary(path)


def _save_binary(dataset: CauchyDataset, path: Path) -> None:
    circle = dataset.circle
    header = HEADER.pack(
        MAGIC,
        VERSION,
        float(dataset.k),
        float(circle.radius),
        circle.n_receivers,
        float(circle.aperture[0]),
        float(circle.aperture[1]),
        dataset.n_directions,
        float(dataset.direction_aperture[0]),
        float(dataset.direction_aperture[1]),
        1 if dataset.has_normal_derivative else 0,
        float(dataset.noise_level),
    )
    with open(path, "wb") as f:
        f.write(header)
        f.write(np.ascontiguousarray(dataset.u, dtype=COMPLEX).tobytes())
        if dataset.du is not None:
            f.write(np.ascontiguousarray(dataset.du, dtype=COMPLEX).tobytes())


def _load_binary(path: Path) -> CauchyDataset:
    raw = path.read_bytes()
    if len(raw) < HEADER.size:
        raise SchemaError(f"file has {len(raw)} bytes, shorter than the {HEADER.size}-byte header", field="header")
    (magic, version, k, radius, n_rx, a_lo, a_hi, n_dir, d_lo, d_hi, has_du, noise_level) = HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise SchemaError(f"expected {MAGIC!r}, found {magic!r}", field="magic")
    if version != VERSION:
        raise SchemaError(f"unsupported version {version}, expected {VERSION}", field="version")
    if has_du not in (0, 1):
        raise SchemaError(f"flag must be 0 or 1, found {has_du}", field="has_du")

    n_values = n_rx * n_dir * (1 + has_du)
    payload = len(raw) - HEADER.size
    if payload != n_values * COMPLEX.itemsize:
        raise SchemaError(
            f"payload holds {payload // COMPLEX.itemsize} complex values, header declares "
            f"{n_rx} receivers x {n_dir} directions x {1 + has_du} matrices",
            field="n_receivers",
        )

    data = np.frombuffer(raw, dtype=COMPLEX, offset=HEADER.size).astype(complex)
    u = data[: n_rx * n_dir].reshape(n_rx, n_dir)
    du = data[n_rx * n_dir:].reshape(n_rx, n_dir) if has_du else None
    return CauchyDataset(
        k=k,
        circle=MeasurementCircle(radius=radius, n_receivers=n_rx, aperture=(a_lo, a_hi)),
        n_directions=n_dir,
        direction_aperture=(d_lo, d_hi),
        u=u,
        du=du,
        noise_level=noise_level,
    )


def _save_csv(dataset: CauchyDataset, path: Path) -> None:
    circle = dataset.circle
    values = (
        float(dataset.k),
        float(circle.radius),
        circle.n_receivers,
        dataset.n_directions,
        float(circle.aperture[0]),
        float(circle.aperture[1]),
        float(dataset.direction_aperture[0]),
        float(dataset.direction_aperture[1]),
        1 if dataset.has_normal_derivative else 0,
    )
    du = dataset.du if dataset.du is not None else np.zeros_like(dataset.u)
    lines = [
        "# " + " ".join(CSV_FIELDS),
        "# " + " ".join(repr(v) for v in values),
        ",".join(CSV_COLUMNS),
    ]
    for j in range(circle.n_receivers):
        for l in range(dataset.n_directions):
            u_jl, du_jl = dataset.u[j, l], du[j, l]
            lines.append(
                f"{j},{l},{float(u_jl.real)!r},{float(u_jl.imag)!r},{float(du_jl.real)!r},{float(du_jl.imag)!r}"
            )
    path.write_text("\n".join(lines) + "\n")


def _parse_header_values(line: str, line_no: int) -> dict:
    tokens = line.lstrip("#").split()
    if len(tokens) != len(CSV_FIELDS):
        raise SchemaError(f"expected {len(CSV_FIELDS)} header values, found {len(tokens)}", field="header", line=line_no)
    values = {}
    for name, token in zip(CSV_FIELDS, tokens):
        try:
            values[name] = int(token) if name in ("n_x", "n_d", "has_du") else float(token)
        except ValueError:
            raise SchemaError(f"cannot parse '{token}'", field=name, line=line_no) from None
    return values


def _load_csv(path: Path) -> CauchyDataset:
    lines = path.read_text().splitlines()
    if len(lines) < 3:
        raise SchemaError("file is too short for the header", field="header", line=len(lines))
    if lines[0].lstrip("#").split() != list(CSV_FIELDS):
        raise SchemaError("unexpected header field names", field="header", line=1)
    header = _parse_header_values(lines[1], 2)
    if lines[2].split(",") != list(CSV_COLUMNS):
        raise SchemaError("unexpected column names", field="columns", line=3)

    n_rx, n_dir, has_du = header["n_x"], header["n_d"], header["has_du"]
    rows = [line for line in lines[3:] if line.strip()]
    if len(rows) != n_rx * n_dir:
        raise SchemaError(
            f"found {len(rows)} data rows, header declares {n_rx} receivers x {n_dir} directions",
            field="n_receivers",
        )

    u = np.zeros((n_rx, n_dir), dtype=complex)
    du = np.zeros((n_rx, n_dir), dtype=complex)
    # with the row count checked above, rejecting duplicates also rules out missing pairs
    seen = set()
    for offset, row in enumerate(rows):
        line_no = offset + 4
        cells = row.split(",")
        if len(cells) != len(CSV_COLUMNS):
            raise SchemaError(f"expected {len(CSV_COLUMNS)} columns, found {len(cells)}", field="columns", line=line_no)
        try:
            j, l = int(cells[0]), int(cells[1])
        except ValueError:
            raise SchemaError("index is not an integer", field="rx_index", line=line_no) from None
        if not (0 <= j < n_rx):
            raise SchemaError(f"index {j} outside [0, {n_rx})", field="rx_index", line=line_no)
        if not (0 <= l < n_dir):
            raise SchemaError(f"index {l} outside [0, {n_dir})", field="dir_index", line=line_no)
        if (j, l) in seen:
            raise SchemaError(f"duplicate entry for receiver {j}, direction {l}", field="rx_index", line=line_no)
        seen.add((j, l))
        numbers = []
        for name, cell in zip(CSV_COLUMNS[2:], cells[2:]):
            try:
                numbers.append(float(cell))
            except ValueError:
                raise SchemaError(f"cannot parse '{cell}'", field=name, line=line_no) from None
        u[j, l] = complex(numbers[0], numbers[1])
        du[j, l] = complex(numbers[2], numbers[3])

    return CauchyDataset(
        k=header["k"],
        circle=MeasurementCircle(
            radius=header["R"], n_receivers=n_rx, aperture=(header["aperture_lo"], header["aperture_hi"])
        ),
        n_directions=n_dir,
        direction_aperture=(header["d_aperture_lo"], header["d_aperture_hi"]),
        u=u,
        du=du if has_du else None,
    )
