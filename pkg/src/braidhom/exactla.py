"""Exact scalars and sparse exact linear algebra.

Scalars are either `fractions.Fraction` (rationals) or plain ints reduced into
[0, p) (prime fields).  A `SparseMatrix` with r rows and c columns represents a
linear map from k^c to k^r in the column-vector convention; only nonzero
entries are stored.  Every rank in the package flows through `rank`, which
runs sparse Gaussian elimination: over a prime field directly, over the
rationals by clearing denominators row-wise and eliminating integer rows with
per-row gcd normalization, so no Fraction arithmetic happens inside the loop.

Pivots are chosen in the sparsest eligible column (ties: lowest column index),
and within that column in the shortest row (ties: lowest row index).  This
makes every computation deterministic.  All values are immutable after
construction; rank computations on distinct matrices are safe to run
concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd


class FieldMismatchError(ValueError):
    """An entry is not a valid scalar of the requested field."""


class ComplexIntegrityError(ValueError):
    """Two supposedly consecutive differentials do not compose to zero."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class CoefficientField:
    """The rationals or a prime field F_p.

    `characteristic` is 0 for the rationals and the prime p otherwise.
    Rational scalars are Fractions (kept in lowest terms with positive
    denominator by the Fraction type itself); prime-field scalars are ints
    in [0, p).
    """

    characteristic: int

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ValueError(f"characteristic must be 0 or prime, got {self.characteristic}")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime_field"

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def convert(self, x):
        """Coerce an int or Fraction into a scalar of this field."""
        p = self.characteristic
        if p == 0:
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise FieldMismatchError(f"cannot coerce {x!r} into Q")
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise FieldMismatchError(f"denominator of {x} vanishes mod {p}")
            return (x.numerator * pow(den, -1, p)) % p
        raise FieldMismatchError(f"cannot coerce {x!r} into F_{p}")

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def add(self, a, b):
        return a + b if self.characteristic == 0 else (a + b) % self.characteristic

    def sub(self, a, b):
        return a - b if self.characteristic == 0 else (a - b) % self.characteristic

    def mul(self, a, b):
        return a * b if self.characteristic == 0 else (a * b) % self.characteristic

    def neg(self, a):
        return -a if self.characteristic == 0 else (-a) % self.characteristic

    def inv(self, a):
        if self.characteristic == 0:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / Fraction(a)
        return pow(a, -1, self.characteristic)

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"F_{self.characteristic}"


QQ = CoefficientField(0)
GF2 = CoefficientField(2)


def GF(p: int) -> CoefficientField:
    return CoefficientField(p)


class SparseMatrix:
    """Immutable-by-convention sparse matrix over exact scalars.

    Entries may be ints, Fractions, or prime-field residues; they are coerced
    into the target field at computation time.  Zero entries are never stored.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: dict | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        self.rows = rows
        self.cols = cols
        ent = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise ValueError(f"index ({i},{j}) out of range for {rows}x{cols}")
                if v != 0:
                    ent[(i, j)] = v
        self.entries = ent

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_columns(cls, rows: int, columns: list[dict]) -> "SparseMatrix":
        ent = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v != 0:
                    ent[(i, j)] = v
        return cls(rows, len(columns), ent)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def column(self, j: int) -> dict:
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def row_lists(self, F: CoefficientField) -> list[dict]:
        """Rows as {col: scalar} dicts with entries coerced into F."""
        rows = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            fv = F.convert(v)
            if fv != 0:
                rows[i][j] = fv
        return rows

    def scale(self, c) -> "SparseMatrix":
        return SparseMatrix(self.rows, self.cols, {k: c * v for k, v in self.entries.items()})

    def add(self, other: "SparseMatrix", F: CoefficientField) -> "SparseMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        ent = {k: F.convert(v) for k, v in self.entries.items()}
        for k, v in other.entries.items():
            s = F.add(ent.get(k, F.zero), F.convert(v))
            if s == 0:
                ent.pop(k, None)
            else:
                ent[k] = s
        return SparseMatrix(self.rows, self.cols, ent)

    def matmul(self, other: "SparseMatrix", F: CoefficientField) -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        cols_self = [dict() for _ in range(self.cols)]
        for (i, k), v in self.entries.items():
            cols_self[k][i] = F.convert(v)
        by_col = [dict() for _ in range(other.cols)]
        for (k, j), v in other.entries.items():
            by_col[j][k] = F.convert(v)
        cols_out = []
        for j in range(other.cols):
            acc = {}
            for k, b in by_col[j].items():
                for i, a in cols_self[k].items():
                    s = F.add(acc.get(i, F.zero), F.mul(a, b))
                    if s == 0:
                        acc.pop(i, None)
                    else:
                        acc[i] = s
            cols_out.append(acc)
        return SparseMatrix.from_columns(self.rows, cols_out)

    def apply(self, vec: dict, F: CoefficientField) -> dict:
        """Apply to a column vector given as {index: scalar}."""
        out = {}
        for (i, j), v in self.entries.items():
            x = vec.get(j)
            if x is None:
                continue
            s = F.add(out.get(i, F.zero), F.mul(F.convert(v), F.convert(x)))
            if s == 0:
                out.pop(i, None)
            else:
                out[i] = s
        return out

    def to_triplet_text(self) -> str:
        """Serialize as 'rows cols nnz' header plus one 'row col value' line per entry."""
        lines = [f"{self.rows} {self.cols} {self.nnz}"]
        for (i, j) in sorted(self.entries):
            lines.append(f"{i} {j} {self.entries[(i, j)]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_triplet_text(cls, text: str) -> "SparseMatrix":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        r, c, nnz = (int(t) for t in lines[0].split())
        ent = {}
        for ln in lines[1 : nnz + 1]:
            i, j, v = ln.split()
            ent[(int(i), int(j))] = Fraction(v) if "/" in v else int(v)
        return cls(r, c, ent)


def _rank_modp(rows: list[dict], ncols: int, p: int) -> int:
    """Sparse Gaussian elimination over F_p; rows is consumed."""
    rows = [r for r in rows if r]
    rank = 0
    while rows:
        support = {}
        for r in rows:
            for j in r:
                support[j] = support.get(j, 0) + 1
        pc = min(support, key=lambda j: (support[j], j))
        cand = [(len(r), idx) for idx, r in enumerate(rows) if pc in r]
        _, pi = min(cand)
        prow = rows.pop(pi)
        pval = prow[pc]
        pinv = pow(pval, -1, p)
        rank += 1
        nxt = []
        for r in rows:
            a = r.get(pc)
            if a is not None:
                f = (a * pinv) % p
                for j, v in prow.items():
                    nv = (r.get(j, 0) - f * v) % p
                    if nv:
                        r[j] = nv
                    else:
                        r.pop(j, None)
            if r:
                nxt.append(r)
        rows = nxt
    return rank


def _rank_int(rows: list[dict], ncols: int) -> int:
    """Fraction-free sparse elimination of integer rows (gcd-normalized)."""
    norm = []
    for r in rows:
        if not r:
            continue
        g = 0
        for v in r.values():
            g = gcd(g, v)
        if g > 1:
            r = {j: v // g for j, v in r.items()}
        norm.append(r)
    rows = norm
    rank = 0
    while rows:
        support = {}
        for r in rows:
            for j in r:
                support[j] = support.get(j, 0) + 1
        pc = min(support, key=lambda j: (support[j], j))
        cand = [(len(r), idx) for idx, r in enumerate(rows) if pc in r]
        _, pi = min(cand)
        prow = rows.pop(pi)
        pval = prow[pc]
        rank += 1
        nxt = []
        for r in rows:
            a = r.get(pc)
            if a is not None:
                # integer-preserving update r := pval*r - a*prow, then strip gcd
                new = {}
                for j in set(r) | set(prow):
                    nv = pval * r.get(j, 0) - a * prow.get(j, 0)
                    if nv:
                        new[j] = nv
                g = 0
                for v in new.values():
                    g = gcd(g, v)
                if g > 1:
                    new = {j: v // g for j, v in new.items()}
                r = new
            if r:
                nxt.append(r)
        rows = nxt
    return rank


def rank(M: SparseMatrix, F: CoefficientField) -> int:
    """Exact rank of M over F.

    Raises FieldMismatchError if an entry cannot be interpreted in F (for
    example a Fraction whose denominator vanishes mod p).
    """
    if M.rows == 0 or M.cols == 0 or not M.entries:
        return 0
    if F.is_rational:
        rows = [dict() for _ in range(M.rows)]
        for (i, j), v in M.entries.items():
            fv = F.convert(v)
            if fv != 0:
                rows[i][j] = fv
        int_rows = []
        for r in rows:
            if not r:
                continue
            den = 1
            for v in r.values():
                den = den * v.denominator // gcd(den, v.denominator)
            int_rows.append({j: int(v * den) for j, v in r.items()})
        return _rank_int(int_rows, M.cols)
    p = F.characteristic
    rows = [dict() for _ in range(M.rows)]
    for (i, j), v in M.entries.items():
        fv = F.convert(v)
        if fv != 0:
            rows[i][j] = fv
    return _rank_modp(rows, M.cols, p)


def homology_rank(d_in: SparseMatrix, d_out: SparseMatrix, F: CoefficientField) -> int:
    """dim ker(d_out) - rank(d_in) for a three-term stretch d_in, then d_out.

    d_in lands in the middle space, d_out leaves it.  Raises
    ComplexIntegrityError unless d_out o d_in = 0.
    """
    if d_in.rows != d_out.cols:
        raise ValueError(
            f"middle dimension mismatch: d_in has {d_in.rows} rows, d_out has {d_out.cols} cols"
        )
    comp = d_out.matmul(d_in, F)
    if comp.entries:
        bad = sorted(comp.entries)[0]
        raise ComplexIntegrityError(f"d_out . d_in != 0 (first nonzero at {bad})")
    ker = d_out.cols - rank(d_out, F)
    return ker - rank(d_in, F)


def _rref(M: SparseMatrix, F: CoefficientField):
    """Reduced row echelon form; returns (rows as dicts, pivot column list)."""
    rows = M.row_lists(F)
    rows = [r for r in rows if r]
    pivots = []
    done = []
    while rows:
        cols = set()
        for r in rows:
            cols.update(r)
        pc = min(c for c in cols)
        cand = [(len(r), idx) for idx, r in enumerate(rows) if pc in r]
        if not cand:
            # no row holds the minimal column; impossible since cols built from rows
            raise AssertionError
        _, pi = min(cand)
        prow = rows.pop(pi)
        inv = F.inv(prow[pc])
        prow = {j: F.mul(inv, v) for j, v in prow.items()}
        nxt = []
        for r in rows:
            a = r.get(pc)
            if a is not None:
                for j, v in prow.items():
                    nv = F.sub(r.get(j, F.zero), F.mul(a, v))
                    if nv == 0:
                        r.pop(j, None)
                    else:
                        r[j] = nv
            if r:
                nxt.append(r)
        rows = nxt
        for d in done:
            a = d.get(pc)
            if a is not None:
                for j, v in prow.items():
                    nv = F.sub(d.get(j, F.zero), F.mul(a, v))
                    if nv == 0:
                        d.pop(j, None)
                    else:
                        d[j] = nv
        done.append(prow)
        pivots.append(pc)
    order = sorted(range(len(pivots)), key=lambda k: pivots[k])
    return [done[k] for k in order], sorted(pivots)


def kernel_basis(M: SparseMatrix, F: CoefficientField) -> list[dict]:
    """A deterministic basis of ker(M) as sparse column vectors."""
    rrows, pivots = _rref(M, F)
    pivot_set = set(pivots)
    free = [j for j in range(M.cols) if j not in pivot_set]
    basis = []
    for f in free:
        vec = {f: F.one}
        for prow, pc in zip(rrows, pivots):
            a = prow.get(f)
            if a is not None:
                vec[pc] = F.neg(a)
        basis.append(vec)
    return basis


def column_space_contains(M: SparseMatrix, vec: dict, F: CoefficientField) -> bool:
    """Whether vec lies in the column space of M."""
    aug_cols = [M.column(j) for j in range(M.cols)] + [dict(vec)]
    aug = SparseMatrix.from_columns(M.rows, aug_cols)
    return rank(aug, F) == rank(M, F)


def homology_basis(d_in: SparseMatrix, d_out: SparseMatrix, F: CoefficientField) -> list[dict]:
    """Cycle representatives spanning ker(d_out)/im(d_in), as sparse vectors.

    Chosen deterministically: kernel vectors of d_out that add rank beyond the
    columns of d_in, in kernel-basis order.
    """
    ker = kernel_basis(d_out, F)
    img_cols = [d_in.column(j) for j in range(d_in.cols)]
    base = SparseMatrix.from_columns(d_in.rows, img_cols)
    r0 = rank(base, F)
    reps = []
    kept = list(img_cols)
    for kv in ker:
        cand = SparseMatrix.from_columns(d_in.rows, kept + [kv])
        r1 = rank(cand, F)
        if r1 > r0:
            reps.append(kv)
            kept.append(kv)
            r0 = r1
    return reps


def solve_dense(A: list[list], b: list[list], F: CoefficientField) -> list[list]:
    """Solve A X = B for invertible square A; all entries field scalars.

    A is n x n given row-major, B is n x m row-major; returns X row-major.
    """
    n = len(A)
    m = len(b[0]) if b else 0
    M = [[F.convert(A[i][j]) for j in range(n)] + [F.convert(b[i][j]) for j in range(m)] for i in range(n)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if M[i][col] != 0:
                piv = i
                break
        if piv is None:
            raise ZeroDivisionError("singular matrix in solve_dense")
        M[col], M[piv] = M[piv], M[col]
        inv = F.inv(M[col][col])
        M[col] = [F.mul(inv, v) for v in M[col]]
        for i in range(n):
            if i != col and M[i][col] != 0:
                f = M[i][col]
                M[i] = [F.sub(M[i][j], F.mul(f, M[col][j])) for j in range(n + m)]
    return [[M[i][n + j] for j in range(m)] for i in range(n)]


@dataclass
class RankTable:
    """A multigraded table of non-negative ranks; absent keys mean rank 0."""

    axes: tuple[str, ...]
    values: dict = field(default_factory=dict)

    def get(self, key) -> int:
        return self.values.get(tuple(key), 0)

    def set(self, key, r: int):
        key = tuple(key)
        if len(key) != len(self.axes):
            raise ValueError(f"key {key} does not match axes {self.axes}")
        if r < 0:
            raise ValueError("ranks are non-negative")
        if r == 0:
            self.values.pop(key, None)
        else:
            self.values[key] = r

    def items(self):
        return sorted(self.values.items())

    def to_csv(self) -> str:
        lines = [",".join(self.axes + ("rank",))]
        for key, r in self.items():
            lines.append(",".join(str(k) for k in key) + f",{r}")
        return "\n".join(lines) + "\n"

    def to_json_obj(self):
        return {
            "axes": list(self.axes),
            "ranks": [{"key": list(k), "rank": r} for k, r in self.items()],
        }
