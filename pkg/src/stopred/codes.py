"""Benchmark codes and parity-check matrix text formats."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from . import gf2
from .errors import ConstructionError, ParseError, PreconditionError
from .gf2 import BitMatrix

# Conventional parity-check matrix of the extended [24,12,8] Golay code,
# column 1 first; blanks of the printed table are zeros.
GOLAY24_ROWS = (
    "110000000000011011100010",
    "101000000000001101110001",
    "100100000000010110111000",
    "100010000000001011011100",
    "100001000000000101101110",
    "100000100000000010110111",
    "100000010000010001011011",
    "100000001000011000101101",
    "100000000100011100010110",
    "100000000010001110001011",
    "100000000001010111000101",
    "000000000000111111111111",
)


@dataclass(frozen=True)
class LinearCode:
    """Binary linear ``[n, k, d]`` code given by a full-rank parity-check matrix.

    The dual code is the row space of ``H``; ``dual_distance`` is its minimum
    distance.  Unknown parameters are ``None`` and computed on demand.
    """

    name: str
    H: BitMatrix
    d: int | None = None
    dual_distance: int | None = None
    _census_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        if gf2.rank(self.H) != len(self.H):
            raise PreconditionError("parity-check matrix rows must be linearly independent")
        if self.d is not None and self.d < 1:
            raise PreconditionError("minimum distance must be positive")

    @property
    def n(self) -> int:
        return self.H.n

    @property
    def r(self) -> int:
        return len(self.H)

    @property
    def k(self) -> int:
        return self.n - self.r

    @cached_property
    def generator(self) -> BitMatrix:
        return gf2.nullspace_basis(self.H)

    def dual_census(self, workers: int = 1) -> gf2.Census:
        if "dual" not in self._census_cache:
            self._census_cache["dual"] = gf2.min_weight_census(self.H, workers=workers)
        return self._census_cache["dual"]

    def code_census(self, workers: int = 1) -> gf2.Census:
        if "code" not in self._census_cache:
            if self.k == 0:
                raise PreconditionError("the code is {0}; minimum distance undefined")
            self._census_cache["code"] = gf2.min_weight_census(self.generator, workers=workers)
        return self._census_cache["code"]

    def min_distance(self, workers: int = 1) -> int:
        return self.d if self.d is not None else self.code_census(workers).d_min

    def dual_min_distance(self, workers: int = 1) -> int:
        if self.dual_distance is not None:
            return self.dual_distance
        return self.dual_census(workers).d_min

    @property
    def min_weight_dual_words(self) -> list[int]:
        return self.dual_census().words

    def is_self_dual(self) -> bool:
        return gf2.row_space_equal(self.H, self.generator)

    def contains_dual(self, v: int) -> bool:
        """True when ``v`` is orthogonal to every generator row, i.e. lies in the dual."""
        return all(gf2.orthogonal(v, g) for g in self.generator)


def from_parity_check(H: BitMatrix, name: str = "custom") -> LinearCode:
    """Wrap an arbitrary (possibly redundant) parity-check matrix."""
    basis = gf2.independent_rows(H)
    if len(basis) == 0:
        raise PreconditionError("parity-check matrix has rank 0")
    return LinearCode(name, basis)


def golay24() -> LinearCode:
    H = BitMatrix.from_strings(GOLAY24_ROWS)
    return LinearCode("golay24", H, d=8, dual_distance=8)


def _poly_mod(a: int, b: int) -> int:
    db = b.bit_length() - 1
    while a and a.bit_length() - 1 >= db:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def _poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def qr_generator_polynomial(p: int = 47) -> int:
    """Generator polynomial of the binary quadratic-residue code of prime length ``p``.

    Computed as ``gcd(x^p + 1, sum of x^q over nonzero squares q mod p)``.
    For ``p = ±1 mod 8`` the residue idempotent vanishes on exactly one of the
    two conjugacy classes of primitive ``p``-th roots, so the gcd is the product
    of ``(x - b^q)`` over residues ``q`` for a suitable root ``b``.  Bit ``i``
    holds the coefficient of ``x^i``.
    """
    if p % 8 not in (1, 7):
        raise PreconditionError("binary QR codes need p = ±1 mod 8")
    residues = {(x * x) % p for x in range(1, p)}
    idem = sum(1 << q for q in residues)
    g = _poly_gcd((1 << p) | 1, idem)
    if g.bit_length() - 1 != (p - 1) // 2:
        raise ConstructionError(f"unexpected generator degree {g.bit_length() - 1}")
    return g


def extended_qr48() -> LinearCode:
    """The self-dual extended ``[48, 24, 12]`` quadratic-residue code.

    Rows are the 24 cyclic shifts of the length-47 generator polynomial, each
    extended by an overall parity bit in column 48.  Because the code is
    self-dual the generator matrix doubles as a parity-check matrix.  Only the
    cheap checks run here; the distance is confirmed by the test suite.
    """
    p = 47
    g = qr_generator_polynomial(p)
    k = p - (g.bit_length() - 1)
    rows = []
    for s in range(k):
        v = g << s
        if v.bit_count() % 2:
            v |= 1 << p
        rows.append(v)
    H = BitMatrix(tuple(rows), p + 1)
    if gf2.rank(H) != 24:
        raise ConstructionError("extended QR generator is not full rank")
    if any(not gf2.orthogonal(a, b) for a in rows for b in rows):
        raise ConstructionError("extended QR code is not self-orthogonal")
    return LinearCode("qr48", H, d=12, dual_distance=12)


BUILTIN_CODES = {"golay24": golay24, "qr48": extended_qr48}


def builtin(name: str) -> LinearCode:
    try:
        return BUILTIN_CODES[name]()
    except KeyError:
        raise PreconditionError(f"unknown code {name!r}; built-ins are {sorted(BUILTIN_CODES)}") from None


# ---------------------------------------------------------------- alist


def save_alist(M: BitMatrix) -> str:
    """Serialise to alist: ``n m``, max degrees, degree lists, then zero-padded
    1-based index lists per column and per row."""
    m, n = M.shape
    if m == 0 or n == 0:
        raise PreconditionError("zero dimensions")
    cols = [[i + 1 for i, row in enumerate(M.rows) if (row >> j) & 1] for j in range(n)]
    rows = [gf2.support(row) for row in M.rows]
    max_c = max(len(c) for c in cols)
    max_r = max(len(r) for r in rows)

    def line(values):
        return " ".join(str(v) for v in values)

    out = [line([n, m]), line([max_c, max_r]), line(len(c) for c in cols), line(len(r) for r in rows)]
    out += [line(c + [0] * (max_c - len(c))) for c in cols]
    out += [line(r + [0] * (max_r - len(r))) for r in rows]
    return "\n".join(out) + "\n"


def _int_tokens(line: str, lineno: int) -> list[tuple[int, int]]:
    """(value, 1-based column) pairs for each whitespace-separated token."""
    out = []
    pos = 0
    for tok in line.split():
        col = line.index(tok, pos) + 1
        pos = col - 1 + len(tok)
        try:
            out.append((int(tok), col))
        except ValueError:
            raise ParseError(f"expected an integer, got {tok!r}", lineno, col) from None
    return out


def load_alist(text: str) -> BitMatrix:
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip()]
    if not lines:
        raise ParseError("zero dimensions: empty input")
    cursor = iter(lines)

    def take(expected: int | None, what: str):
        try:
            lineno, ln = next(cursor)
        except StopIteration:
            raise ParseError(f"unexpected end of input while reading {what}") from None
        toks = _int_tokens(ln, lineno)
        if expected is not None and len(toks) != expected:
            raise ParseError(f"{what}: expected {expected} values, found {len(toks)}", lineno)
        return lineno, toks

    lineno, hdr = take(2, "header 'n m'")
    n, m = hdr[0][0], hdr[1][0]
    if n <= 0 or m <= 0:
        raise ParseError("zero dimensions", lineno)
    lineno, mx = take(2, "maximum degrees")
    max_c, max_r = mx[0][0], mx[1][0]
    lineno_cd, cdeg = take(n, "column degrees")
    lineno_rd, rdeg = take(m, "row degrees")
    col_deg = [v for v, _ in cdeg]
    row_deg = [v for v, _ in rdeg]
    for degs, mxv, ln_, what in ((cdeg, max_c, lineno_cd, "column"), (rdeg, max_r, lineno_rd, "row")):
        for v, c in degs:
            if v < 0 or v > mxv:
                raise ParseError(f"{what} degree {v} outside 0..{mxv}", ln_, c)
        if max(v for v, _ in degs) != mxv:
            raise ParseError(f"maximum {what} degree {mxv} does not match the degree list", lineno)

    def index_lists(count, degrees, width, bound, what):
        lists = []
        for idx in range(count):
            ln_, toks = take(None, f"{what} {idx + 1} index list")
            deg = degrees[idx]
            if len(toks) not in (deg, width):
                raise ParseError(
                    f"{what} {idx + 1}: expected {width} entries (or {deg} unpadded), found {len(toks)}", ln_
                )
            entries = []
            for pos, (v, c) in enumerate(toks):
                if pos < deg:
                    if not 1 <= v <= bound:
                        raise ParseError(f"{what} {idx + 1}: index {v} outside 1..{bound}", ln_, c)
                    entries.append(v)
                elif v != 0:
                    raise ParseError(f"{what} {idx + 1}: padding must be 0, got {v}", ln_, c)
            if len(set(entries)) != len(entries):
                raise ParseError(f"{what} {idx + 1}: repeated index", ln_)
            lists.append((ln_, entries))
        return lists

    col_lists = index_lists(n, col_deg, max_c, m, "column")
    row_lists = index_lists(m, row_deg, max_r, n, "row")
    extra = next(cursor, None)
    if extra is not None:
        raise ParseError("trailing content after the row lists", extra[0])

    rows = [0] * m
    for j, (_, entries) in enumerate(col_lists):
        for i in entries:
            rows[i - 1] |= 1 << j
    for i, (ln_, entries) in enumerate(row_lists):
        if gf2.from_support(entries) != rows[i]:
            raise ParseError(f"row {i + 1} list disagrees with the column lists", ln_)
    return BitMatrix(tuple(rows), n)


# ---------------------------------------------------------------- plain


def save_plain(M: BitMatrix) -> str:
    if len(M) == 0:
        raise PreconditionError("zero dimensions")
    return "\n".join(M.to_strings()) + "\n"


def load_plain(text: str) -> BitMatrix:
    """One row per line of ``0``/``1`` characters; spaces and blank lines ignored."""
    rows: list[list[int]] = []
    width = None
    for lineno, ln in enumerate(text.splitlines(), start=1):
        if not ln.strip():
            continue
        row = []
        for col, ch in enumerate(ln, start=1):
            if ch in "01":
                row.append(ord(ch) - 48)
            elif not ch.isspace():
                raise ParseError(f"unexpected character {ch!r}", lineno, col)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"ragged row: {len(row)} entries, previous rows have {width}", lineno)
        rows.append(row)
    if not rows:
        raise ParseError("zero dimensions")
    return BitMatrix.from_lists(rows)


def load_matrix(text: str, fmt: str | None = None) -> BitMatrix:
    """Parse either format; ``fmt=None`` tries plain first, then alist."""
    if fmt == "alist":
        return load_alist(text)
    if fmt == "plain":
        return load_plain(text)
    try:
        return load_plain(text)
    except ParseError as plain_err:
        try:
            return load_alist(text)
        except ParseError:
            raise plain_err from None
