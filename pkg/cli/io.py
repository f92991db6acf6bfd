"""
I/O - CSV and JSON-lines encodings of perturbed samples, and spectrum parsing
for the density subcommand
"""

import csv
import io
import json
import logging
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any, Iterator, List, Optional, Sequence, TextIO

import numpy as np

from errors import SpectrumParseError
from perturbation.maps import PerturbedSpectrum

logger = logging.getLogger(__name__)


@dataclass
class SampleRow:
    """One perturbed sample: index, coupling and eigenvalues."""

    idx: int
    l: float
    z: np.ndarray


def format_float(value: float) -> str:
    """Shortest decimal that reads back to the same double."""
    return repr(float(value))


def csv_header(n: int) -> List[str]:
    header = ["idx", "l"]
    for j in range(1, n + 1):
        header += [f"re_{j}", f"im_{j}"]
    return header


def write_csv(rows: Sequence[SampleRow], n: int, handle: TextIO) -> None:
    """Header "idx,l,re_1,im_1,..." followed by one line per sample."""
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(csv_header(n))
    for row in rows:
        values = [str(row.idx), format_float(row.l)]
        for v in row.z:
            values += [format_float(v.real), format_float(v.imag)]
        writer.writerow(values)


def write_json_lines(rows: Sequence[SampleRow], handle: TextIO) -> None:
    """One {"idx", "l", "z": [[re, im], ...]} object per line."""
    for row in rows:
        record = {
            "idx": row.idx,
            "l": float(row.l),
            "z": [[float(v.real), float(v.imag)] for v in row.z],
        }
        handle.write(json.dumps(record) + "\n")


@contextmanager
def open_output(path: Optional[str]) -> Iterator[TextIO]:
    """The named file, or stdout when no path is given."""
    if path is None or path == "-":
        yield sys.stdout
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="") as handle:
        yield handle
    logger.info(f"Wrote {path}")


def read_input(path: Optional[str]) -> str:
    """Contents of ``path``, or of stdin when no path is given."""
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _pair(value: Any, field: str) -> complex:
    if isinstance(value, dict):
        if "re" not in value or "im" not in value:
            raise SpectrumParseError(field, "object needs 're' and 'im'")
        value = [value["re"], value["im"]]
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise SpectrumParseError(field, f"expected [re, im], got {value!r}")
    try:
        re, im = float(value[0]), float(value[1])
    except (TypeError, ValueError):
        raise SpectrumParseError(field, f"non-numeric entry {value!r}")
    if not (np.isfinite(re) and np.isfinite(im)):
        raise SpectrumParseError(field, "entries must be finite")
    return complex(re, im)


def _from_json(value: Any, field: str) -> PerturbedSpectrum:
    if isinstance(value, dict):
        if "z" not in value:
            raise SpectrumParseError(field, "object has no 'z' entry")
        value, field = value["z"], f"{field}.z"
    if not isinstance(value, list) or not value:
        raise SpectrumParseError(field, "expected a non-empty list of [re, im] pairs")
    return PerturbedSpectrum(np.array([_pair(v, f"{field}[{i}]") for i, v in enumerate(value)]))


def _from_csv(text: str) -> List[PerturbedSpectrum]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if not header or header[:2] != ["idx", "l"]:
        raise SpectrumParseError("header", "CSV input must start with 'idx,l,re_1,im_1,...'")
    n = (len(header) - 2) // 2
    if n < 1 or len(header) != 2 + 2 * n or header != csv_header(n):
        raise SpectrumParseError("header", f"malformed column list {header}")
    spectra = []
    for line_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise SpectrumParseError(f"line {line_no}", f"expected {len(header)} columns, got {len(row)}")
        z = []
        for j in range(n):
            field = f"line {line_no}: re_{j + 1}/im_{j + 1}"
            z.append(_pair([row[2 + 2 * j], row[3 + 2 * j]], field))
        spectra.append(PerturbedSpectrum(np.array(z)))
    return spectra


def parse_spectra(text: str) -> List[PerturbedSpectrum]:
    """
    Parse one or more spectra.

    Accepted inputs:
    - a JSON array of [re, im] pairs (or {"re", "im"} objects)
    - JSON objects with a "z" entry, one per line (the sample subcommand's JSON output)
    - the sample subcommand's CSV output

    Raises:
        SpectrumParseError: naming the offending field
    """
    stripped = text.strip()
    if not stripped:
        raise SpectrumParseError("input", "no spectrum given")
    if stripped.startswith("["):
        try:
            value = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise SpectrumParseError("input", f"invalid JSON: {e.msg} at position {e.pos}")
        return [_from_json(value, "z")]
    if stripped.startswith("{"):
        spectra = []
        for line_no, line in enumerate(stripped.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                value = json.loads(line)
            except json.JSONDecodeError as e:
                raise SpectrumParseError(f"line {line_no}", f"invalid JSON: {e.msg}")
            spectra.append(_from_json(value, f"line {line_no}"))
        return spectra
    return _from_csv(stripped)
