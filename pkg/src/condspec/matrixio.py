"""Matrix ingestion (Matrix Market, JSON, CSV), emission, and generators.

Complex entries are written "a+bi" in CSV, [re, im] pairs in JSON, and
"re im" column pairs in Matrix Market files.  All emitters use 17
significant digits so a parse of an emitted file reproduces the entries
bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import jsonio
from .errors import ParseError
from .numkernel import ComplexMatrix, as_matrix

MAX_DIMENSION = 512

FORMAT_MATRIX_MARKET = "matrix-market"
FORMAT_JSON = "json"
FORMAT_CSV = "csv"

_EXTENSIONS = {".mtx": FORMAT_MATRIX_MARKET, ".mm": FORMAT_MATRIX_MARKET,
               ".json": FORMAT_JSON, ".csv": FORMAT_CSV}


@dataclass(frozen=True)
class MatrixSource:
    """Where a matrix comes from: a file path or an inline payload."""

    format: str | None = None
    path: Path | None = None
    text: str | None = None

    def read_text(self) -> str:
        if self.text is not None:
            return self.text
        if self.path is None:
            raise ValueError("MatrixSource needs a path or inline text")
        return Path(self.path).read_text()


def detect_format(source: MatrixSource) -> str:
    if source.format:
        return source.format
    if source.path is not None:
        ext = Path(source.path).suffix.lower()
        if ext in _EXTENSIONS:
            return _EXTENSIONS[ext]
    text = source.read_text().lstrip()
    if text.startswith("%%MatrixMarket"):
        return FORMAT_MATRIX_MARKET
    if text[:1] in "{[":
        return FORMAT_JSON
    return FORMAT_CSV


def parse_matrix(source, fmt: str | None = None, max_n: int = MAX_DIMENSION) -> ComplexMatrix:
    """Parse a square complex matrix from a path, inline text, or MatrixSource."""
    if isinstance(source, MatrixSource):
        src = source if fmt is None else MatrixSource(fmt, source.path, source.text)
    elif isinstance(source, Path):
        src = MatrixSource(fmt, source, None)
    elif isinstance(source, str):
        looks_like_path = "\n" not in source and len(source) < 4096
        if looks_like_path and Path(source).exists():
            src = MatrixSource(fmt, Path(source), None)
        else:
            src = MatrixSource(fmt, None, source)
    else:
        raise TypeError(f"cannot parse a matrix from {type(source).__name__}")
    fmt = detect_format(src)
    text = src.read_text()
    if fmt == FORMAT_JSON:
        entries = _parse_json(text)
    elif fmt == FORMAT_CSV:
        entries = _parse_csv(text)
    elif fmt == FORMAT_MATRIX_MARKET:
        entries = _parse_matrix_market(text)
    else:
        raise ParseError(f"unknown matrix format {fmt!r}")
    rows = len(entries)
    if rows == 0:
        raise ParseError("matrix has no rows")
    if any(len(r) != rows for r in entries):
        cols = len(entries[0])
        raise ParseError(f"matrix must be square, got {rows} rows x {cols} columns")
    if rows > max_n:
        raise ParseError(f"matrix dimension {rows} exceeds the configured maximum {max_n}")
    a = np.array(entries, dtype=np.complex128)
    if not np.isfinite(a).all():
        raise ParseError("matrix entries must be finite")
    return ComplexMatrix(a)


# -- JSON ------------------------------------------------------------------

def _parse_json(text: str) -> list[list[complex]]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    if isinstance(obj, dict):
        if "entries" not in obj:
            raise ParseError("JSON matrix object needs an 'entries' field")
        rows = obj["entries"]
        n = obj.get("n")
        if n is not None and n != len(rows):
            raise ParseError(f"declared n = {n} but {len(rows)} rows present")
    else:
        rows = obj
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("JSON matrix must be a list of rows")
    out = []
    for i, row in enumerate(rows, start=1):
        vals = []
        for j, cell in enumerate(row, start=1):
            vals.append(_json_cell(cell, i, j))
        out.append(vals)
    return out


def _json_cell(cell, i, j) -> complex:
    if isinstance(cell, (int, float)):
        return complex(cell)
    if isinstance(cell, list) and len(cell) == 2 \
            and all(isinstance(x, (int, float)) for x in cell):
        return complex(cell[0], cell[1])
    if isinstance(cell, str):
        return parse_complex_token(cell, i, j)
    raise ParseError(f"row {i}, entry {j}: cannot read {cell!r} as a complex number")


# -- CSV -------------------------------------------------------------------

def parse_complex_token(token: str, line: int = 1, column: int = 1) -> complex:
    """Parse "a+bi" notation (also bare reals and "bi")."""
    t = token.strip()
    if not t:
        raise ParseError("empty entry", line=line, column=column)
    # python's parser wants j and no embedded whitespace
    norm = t.replace("i", "j").replace(" ", "")
    try:
        return complex(norm)
    except ValueError:
        raise ParseError(f"cannot parse complex entry {token!r}", line=line, column=column)


def _parse_csv(text: str) -> list[list[complex]]:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        vals = []
        for col, tok in enumerate(line.split(","), start=1):
            vals.append(parse_complex_token(tok, lineno, col))
        rows.append(vals)
    return rows


# -- Matrix Market ---------------------------------------------------------

def _parse_matrix_market(text: str) -> list[list[complex]]:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("%%MatrixMarket"):
        raise ParseError("missing %%MatrixMarket header", line=1)
    header = lines[0].split()
    if len(header) != 5 or header[1].lower() != "matrix":
        raise ParseError(f"bad Matrix Market header: {lines[0]!r}", line=1)
    layout, field, symmetry = (h.lower() for h in header[2:5])
    if layout not in ("array", "coordinate"):
        raise ParseError(f"unsupported layout {layout!r}", line=1)
    if field not in ("real", "complex", "integer"):
        raise ParseError(f"unsupported field {field!r} (need real or complex)", line=1)
    if symmetry not in ("general", "symmetric", "hermitian", "skew-symmetric"):
        raise ParseError(f"unsupported symmetry {symmetry!r}", line=1)

    body = [(i, ln) for i, ln in enumerate(lines[1:], start=2)
            if ln.strip() and not ln.lstrip().startswith("%")]
    if not body:
        raise ParseError("missing size line", line=len(lines))
    size_lineno, size_line = body[0]
    sizes = size_line.split()

    def to_value(parts, lineno):
        try:
            if field == "complex":
                return complex(float(parts[0]), float(parts[1]))
            return complex(float(parts[0]))
        except (ValueError, IndexError):
            raise ParseError(f"bad numeric data {' '.join(parts)!r}", line=lineno)

    vals_per_entry = 2 if field == "complex" else 1

    if layout == "array":
        if len(sizes) != 2:
            raise ParseError("array size line needs 'rows cols'", line=size_lineno)
        nrow, ncol = int(sizes[0]), int(sizes[1])
        a = np.zeros((nrow, ncol), dtype=np.complex128)
        # array data is column-major; symmetric variants store the lower triangle
        coords = []
        if symmetry == "general":
            coords = [(i, j) for j in range(ncol) for i in range(nrow)]
        else:
            coords = [(i, j) for j in range(ncol) for i in range(j, nrow)]
        data = body[1:]
        if len(data) != len(coords):
            raise ParseError(f"expected {len(coords)} data lines, found {len(data)}",
                             line=size_lineno)
        for (i, j), (lineno, ln) in zip(coords, data):
            v = to_value(ln.split(), lineno)
            a[i, j] = v
            if i != j:
                if symmetry == "symmetric":
                    a[j, i] = v
                elif symmetry == "hermitian":
                    a[j, i] = v.conjugate()
                elif symmetry == "skew-symmetric":
                    a[j, i] = -v
    else:
        if len(sizes) != 3:
            raise ParseError("coordinate size line needs 'rows cols nnz'", line=size_lineno)
        nrow, ncol, nnz = int(sizes[0]), int(sizes[1]), int(sizes[2])
        data = body[1:]
        if len(data) != nnz:
            raise ParseError(f"declared {nnz} entries, found {len(data)}", line=size_lineno)
        a = np.zeros((nrow, ncol), dtype=np.complex128)
        for lineno, ln in data:
            parts = ln.split()
            if len(parts) != 2 + vals_per_entry:
                raise ParseError(f"expected 'i j value' with {vals_per_entry} numeric field(s)",
                                 line=lineno)
            i, j = int(parts[0]) - 1, int(parts[1]) - 1
            if not (0 <= i < nrow and 0 <= j < ncol):
                raise ParseError(f"index ({i + 1}, {j + 1}) out of range", line=lineno)
            v = to_value(parts[2:], lineno)
            a[i, j] = v
            if i != j:
                if symmetry == "symmetric":
                    a[j, i] = v
                elif symmetry == "hermitian":
                    a[j, i] = v.conjugate()
                elif symmetry == "skew-symmetric":
                    a[j, i] = -v
    return a.tolist()


# -- Emission ---------------------------------------------------------------

def emit_matrix(M, fmt: str = FORMAT_JSON) -> str:
    """Serialize with 17 significant digits (parse round-trips bitwise)."""
    a = as_matrix(M).entries
    if fmt == FORMAT_JSON:
        obj = {"n": a.shape[0],
               "entries": [[[c.real, c.imag] for c in row] for row in a.tolist()]}
        return jsonio.dumps(obj)
    if fmt == FORMAT_CSV:
        lines = []
        for row in a:
            lines.append(",".join("%.17g%+.17gi" % (c.real, c.imag) for c in row))
        return "\n".join(lines) + "\n"
    if fmt == FORMAT_MATRIX_MARKET:
        n = a.shape[0]
        lines = ["%%MatrixMarket matrix array complex general", f"{n} {n}"]
        for j in range(n):
            for i in range(n):
                lines.append("%.17g %.17g" % (a[i, j].real, a[i, j].imag))
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown matrix format {fmt!r}")


def write_matrix(M, path, fmt: str | None = None) -> None:
    p = Path(path)
    if fmt is None:
        fmt = _EXTENSIONS.get(p.suffix.lower(), FORMAT_JSON)
    p.write_text(emit_matrix(M, fmt))


# -- Generators --------------------------------------------------------------

def generate(kind: str, n: int = 2, *, value: complex = 0.0, values=None,
             angle: float = 0.5, seed: int = 0) -> ComplexMatrix:
    """Deterministic example matrices.

    jordan: single Jordan block J_n(value); diag: diagonal of `values`;
    random: entries drawn uniformly from the complex unit disk (fixed
    seed => identical matrix); rotation: real rotation by `angle` in the
    first coordinate plane (unitary, condition number 1).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if kind == "jordan":
        a = np.eye(n, dtype=np.complex128) * complex(value)
        a += np.diag(np.ones(n - 1), 1)
        return ComplexMatrix(a)
    if kind == "diag":
        if values is None:
            raise ValueError("diag generator needs `values`")
        vals = np.asarray([complex(v) for v in values], dtype=np.complex128)
        if len(vals) != n:
            n = len(vals)
        return ComplexMatrix(np.diag(vals))
    if kind == "random":
        rng = np.random.default_rng(seed)
        r = np.sqrt(rng.uniform(size=(n, n)))
        th = rng.uniform(0.0, 2.0 * np.pi, size=(n, n))
        return ComplexMatrix(r * np.exp(1j * th))
    if kind == "rotation":
        a = np.eye(n, dtype=np.complex128)
        if n >= 2:
            c, s = np.cos(angle), np.sin(angle)
            a[0, 0] = c
            a[0, 1] = -s
            a[1, 0] = s
            a[1, 1] = c
        return ComplexMatrix(a)
    raise ValueError(f"unknown generator kind {kind!r}")
