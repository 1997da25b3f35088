"""The quantum shuffle algebra, its bar complexes, bigraded Ext ranks, and the
diagonal ring of components.

The algebra on a braided vector space V is graded with degree-n part the span
of length-n basis words; the product is the quantum shuffle product.  Ext
ranks over the algebra are computed as homology ranks of the reduced two-sided
bar complex restricted to one internal degree: in bar degree p and internal
degree n the basis is (compositions of n into p positive parts) x (words of
length n), compositions in colex order, words lexicographic.  The differential
merges adjacent blocks through the shuffle product with alternating signs; it
preserves the internal degree, and d^2 = 0 is asserted on every instance.

Over a field the homology ranks of the bar complex equal the cohomology ranks
of its dual cochain complex, which is why no dualization is performed.

Convention: callers pass the braided space whose algebra they mean.  The
flagship cross-check `verify_main_cor` compares braid homology of V against
the Ext table of the sign twist of V, including the cell-by-cell identity of
the two chain complexes.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .braided import BraidedVectorSpace, index_word, sign_twist, word_index
from .exactla import CoefficientField, RankTable, SparseMatrix
from .fnf import GradedComplex, fnf_complex
from .shuffle import compositions, shuffle_product, shuffles


def default_nmax(V: BraidedVectorSpace) -> int:
    """Truncation degree keeping basis sizes around (rank V)^n 2^(n-1) desk-scale."""
    if V.rank == 1:
        return 8
    if V.rank <= 3:
        return 6
    if V.rank <= 6:
        return 5
    return 4


class TruncatedGradedAlgebra:
    """The quantum shuffle algebra truncated above degree Nmax.

    Degree-n basis: words of length n over the basis of V.  Products are
    computed on demand by the shuffle product; the unit is the empty word.
    """

    def __init__(self, V: BraidedVectorSpace, Nmax: int | None = None):
        self.V = V
        self.Nmax = default_nmax(V) if Nmax is None else Nmax

    def basis(self, n: int):
        if n > self.Nmax:
            raise ValueError(f"degree {n} exceeds truncation {self.Nmax}")
        return [index_word(i, self.V.rank, n) for i in range(self.V.rank**n)]

    def product(self, u: dict, v: dict) -> dict:
        if u and v and len(next(iter(u))) + len(next(iter(v))) > self.Nmax:
            raise ValueError("product degree exceeds truncation")
        return shuffle_product(self.V, u, v)


class BarComplex(GradedComplex):
    """Reduced bar complex of the shuffle algebra at one internal degree.

    Degrees are bar degrees p = 1..n (plus p = 0 when n = 0); the matrix at p
    is d: (p, n) -> (p-1, n).
    """

    def __init__(self, V: BraidedVectorSpace, n: int, F: CoefficientField,
                 basis: dict, diff: dict):
        self.V = V
        self.internal_degree = n
        super().__init__(basis, diff, F)


def bar_complex(V: BraidedVectorSpace, n: int, F: CoefficientField) -> BarComplex:
    """The internal-degree-n reduced bar complex of the shuffle algebra of V.

    The caller chooses V; no sign twist is applied here.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    r = V.rank
    dim = r**n
    basis = {}
    comps = {}
    for p in range(1, n + 1):
        comps[p] = compositions(n, p)
        basis[p] = [(comp, idx) for comp in comps[p] for idx in range(dim)]
    merge_cache = {}
    diff = {}
    for p in range(2, n + 1):
        tgt_index = {comp: k for k, comp in enumerate(comps[p - 1])}
        cols = []
        for comp in comps[p]:
            offset = 0
            merges = []
            for i in range(len(comp) - 1):
                a, b = comp[i], comp[i + 1]
                merged = comp[:i] + (a + b,) + comp[i + 2:]
                key = (a, b, offset)
                if key not in merge_cache:
                    merge_cache[key] = _block_product_vectors(V, n, F, a, b, offset)
                sign = F.convert(1 if i % 2 == 0 else -1)
                merges.append((tgt_index[merged], sign, merge_cache[key]))
                offset += a
            for idx in range(dim):
                col = {}
                for tgt, sign, vecs in merges:
                    for j, cf in vecs[idx].items():
                        row = tgt * dim + j
                        s = F.add(col.get(row, F.zero), F.mul(sign, cf))
                        if s == 0:
                            col.pop(row, None)
                        else:
                            col[row] = s
                cols.append(col)
        diff[p] = SparseMatrix.from_columns(len(basis[p - 1]), cols)
    return BarComplex(V, n, F, basis, diff)


def _block_product_vectors(V: BraidedVectorSpace, n: int, F: CoefficientField,
                           a: int, b: int, offset: int):
    """Images of each basis word of V^(x)n under the shuffle multiplication of the
    adjacent blocks of sizes a, b starting at `offset`, as {index: scalar}."""
    from .braided import apply_moves_to_vector, apply_moves_to_word

    lifts = [[g + offset for g in rec.braid_word()] for rec in shuffles(a, b)]
    r = V.rank
    out = []
    for idx in range(r**n):
        w = index_word(idx, r, n)
        acc = {}
        for moves in lifts:
            if V.monomial:
                cf, w2 = apply_moves_to_word(V, n, moves, w)
                j = word_index(w2, r)
                s = F.add(acc.get(j, F.zero), F.convert(cf))
            else:
                for w2, cf in apply_moves_to_vector(V, n, moves, {w: 1}).items():
                    j = word_index(w2, r)
                    s = F.add(acc.get(j, F.zero), F.convert(cf))
                    if s == 0:
                        acc.pop(j, None)
                    else:
                        acc[j] = s
                continue
            if s == 0:
                acc.pop(j, None)
            else:
                acc[j] = s
        out.append(acc)
    return out


def ext_table(V: BraidedVectorSpace, Nmax: int | None = None,
              F: CoefficientField | None = None) -> RankTable:
    """Ranks of Ext^{s,n} over the shuffle algebra of V, for n <= Nmax, 0 <= s <= n."""
    if F is None:
        raise ValueError("a coefficient field is required")
    Nmax = default_nmax(V) if Nmax is None else Nmax
    table = RankTable(("s", "n"))
    table.set((0, 0), 1)

    def fill(n):
        cx = bar_complex(V, n, F)
        return n, {p: cx.homology_rank(p) for p in range(1, n + 1)}

    ns = list(range(1, Nmax + 1))
    workers = _thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fill, ns))
    else:
        results = [fill(n) for n in ns]
    for n, ranks in results:
        for s, r in ranks.items():
            table.set((s, n), r)
    return table


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get("BRAIDHOM_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class ComponentsRing:
    """The diagonal Ext ring: dims r(n) and, for rack-type spaces with trivial
    cocycle, the orbit basis with concatenation products."""

    dims: list[int]
    orbit_reps: list | None = None     # per degree, list of canonical words
    _tables: dict = field(default_factory=dict, repr=False)

    def r(self, n: int) -> int:
        return self.dims[n]

    def product(self, n1: int, k1: int, n2: int, k2: int) -> int:
        """Index of the product of basis orbits (concatenate, re-canonicalize)."""
        if self.orbit_reps is None:
            raise ValueError("no orbit basis available for this space")
        w = self.orbit_reps[n1][k1] + self.orbit_reps[n2][k2]
        tab = self._tables[n1 + n2]
        return tab.index(w)

    def structure_constants(self, n1: int, n2: int):
        out = {}
        for k1 in range(len(self.orbit_reps[n1])):
            for k2 in range(len(self.orbit_reps[n2])):
                out[(k1, k2)] = self.product(n1, k1, n2, k2)
        return out


def components_ring(V: BraidedVectorSpace, Nmax: int, F: CoefficientField) -> ComponentsRing:
    """The ring of components of V: dims of the diagonal Ext of the sign twist,
    with the orbit basis attached (and cross-checked) for rack-type V with
    constant trivial cocycle."""
    diag = []
    Veps = sign_twist(V)
    for n in range(Nmax + 1):
        if n == 0:
            diag.append(1)
            continue
        cx = bar_complex(Veps, n, F)
        diag.append(cx.homology_rank(n))
    trivial_cocycle = (
        V.rack is not None
        and V.cocycle is not None
        and all(v == 1 for row in V.cocycle.table for v in row)
    )
    if not trivial_cocycle:
        return ComponentsRing(diag)
    from .hurwitz import rack_orbits

    tables = {n: rack_orbits(V.rack, n) for n in range(Nmax + 1)}
    reps = [[rec.rep for rec in tables[n].orbits] for n in range(Nmax + 1)]
    for n in range(Nmax + 1):
        if len(reps[n]) != diag[n]:
            raise AssertionError(
                f"diagonal Ext rank {diag[n]} != orbit count {len(reps[n])} at degree {n}"
            )
    return ComponentsRing(diag, reps, tables)


@dataclass
class VerifyReport:
    n: int
    field: CoefficientField
    betti: list[int]
    ext_diagonal: list[int]
    chain_level_ok: bool

    @property
    def ok(self) -> bool:
        return self.betti == self.ext_diagonal and self.chain_level_ok

    def lines(self):
        out = [
            f"n={self.n} field={self.field}",
            f"  H_j(B_n; V^n)            = {self.betti}",
            f"  Ext^(n-j, n) of twist    = {self.ext_diagonal}",
            f"  chain-level cell match   = {'yes' if self.chain_level_ok else 'NO'}",
            f"  {'PASS' if self.ok else 'FAIL'}",
        ]
        return out


def verify_main_cor(V: BraidedVectorSpace, n: int, F: CoefficientField) -> VerifyReport:
    """Cross-check the two pipelines at every homological degree.

    Computes H_j(B_n; V^(x)n) from the cellular complex and Ext^{n-j, n} from
    the bar complex of the sign twist, compares the full rank vectors, and
    checks that the two complexes agree matrix-by-matrix under the canonical
    cell bijection (total degree n + p <-> bar degree p).
    """
    from .fnf import braid_homology

    betti = braid_homology(V, n, F)
    Veps = sign_twist(V)
    bar = bar_complex(Veps, n, F)
    ext_by_s = {p: bar.homology_rank(p) for p in range(1, n + 1)}
    ext_diag = [ext_by_s.get(n - j, 0) for j in range(n + 1)]
    fnf = fnf_complex(V, n, F)
    chain_ok = True
    for p in range(2, n + 1):
        if fnf.differential(n + p) != bar.differential(p):
            chain_ok = False
            break
    if chain_ok:
        for p in range(1, n + 1):
            if len(fnf.basis[n + p]) != len(bar.basis[p]):
                chain_ok = False
                break
    return VerifyReport(n, F, betti, ext_diag, chain_ok)
