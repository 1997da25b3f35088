"""Cellular chain complexes for braid group homology with local coefficients.

The complex for n strands has, in total degree q (n+1 <= q <= 2n), one cell
per ordered partition of n with q - n parts, tensored with the coefficient
space.  The differential merges adjacent parts lambda_i, lambda_{i+1} with
sign (-1)^(i-1), acting on the affected strand block by the signed sum of
lifted shuffles, sum_tau (-1)^|tau| tau~.  H_j of the braid group is read off
as the homology rank in total degree 2n - j (field coefficients, so homology
and compactly-supported-cohomology ranks agree).

Coefficients are abstracted as a local system: anything with a basis and an
action of braid words on vectors over that basis.  Tensor powers of a braided
vector space are the main instance; permutation actions on Nielsen classes
reuse the same machinery.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

from .braided import BraidedVectorSpace, apply_moves_to_vector, apply_moves_to_word, index_word, word_index
from .exactla import CoefficientField, SparseMatrix, homology_rank
from .shuffle import compositions, shuffles


def validate_partition(parts, n: int) -> tuple[int, ...]:
    parts = tuple(parts)
    if any(p < 1 for p in parts) or sum(parts) != n:
        raise ValueError(f"{parts} is not an ordered partition of {n}")
    return parts


class TensorSystem:
    """The local system V^(x)n for a braided vector space V."""

    def __init__(self, V: BraidedVectorSpace, n: int):
        self.V = V
        self.n = n
        self.dim = V.rank**n

    def labels(self):
        return [index_word(i, self.V.rank, self.n) for i in range(self.dim)]

    def apply_moves(self, moves, idx: int):
        """Image of a basis vector as {index: exact coefficient}."""
        w = index_word(idx, self.V.rank, self.n)
        if self.V.monomial:
            cf, w2 = apply_moves_to_word(self.V, self.n, moves, w)
            return {word_index(w2, self.V.rank): cf}
        out = apply_moves_to_vector(self.V, self.n, moves, {w: 1})
        return {word_index(w2, self.V.rank): cf for w2, cf in out.items()}


class PermutationSystem:
    """A local system where braid generators act by permuting a finite basis.

    `gen_action(i, sign, idx)` must return the image index of basis vector
    idx under the (1-based) generator i, inverse when sign < 0.
    """

    def __init__(self, dim: int, gen_action, labels=None):
        self.dim = dim
        self._act = gen_action
        self._labels = labels

    def labels(self):
        return self._labels if self._labels is not None else list(range(self.dim))

    def apply_moves(self, moves, idx: int):
        for mv in moves:
            idx = self._act(abs(mv), 1 if mv > 0 else -1, idx)
        return {idx: 1}


class GradedComplex:
    """A finite chain complex of based vector spaces.

    `basis[q]` lists the cell labels in degree q; `diff[q]` is the matrix of
    d: C_q -> C_{q-1}.  Differential composability (d^2 = 0) is asserted at
    construction, never assumed.
    """

    def __init__(self, basis: dict, diff: dict, F: CoefficientField, check: bool = True):
        self.basis = basis
        self.diff = diff
        self.F = F
        if check:
            self.check_complex()

    @property
    def degrees(self) -> list[int]:
        return sorted(self.basis)

    def dim(self, q: int) -> int:
        return len(self.basis.get(q, ()))

    def differential(self, q: int) -> SparseMatrix:
        """d: C_q -> C_{q-1}, a zero map of the right shape when absent."""
        if q in self.diff:
            return self.diff[q]
        return SparseMatrix.zero(self.dim(q - 1), self.dim(q))

    def check_complex(self):
        for q in self.degrees:
            if self.dim(q) and self.dim(q - 1) and self.dim(q - 2):
                comp = self.differential(q - 1).matmul(self.differential(q), self.F)
                if comp.entries:
                    raise ValueError(f"d^2 != 0 between degrees {q} and {q - 2}")

    def homology_rank(self, q: int) -> int:
        return homology_rank(self.differential(q + 1), self.differential(q), self.F)

    def homology_table(self) -> dict[int, int]:
        qs = self.degrees
        workers = _thread_count()
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                ranks = list(pool.map(self.homology_rank, qs))
            return dict(zip(qs, ranks))
        return {q: self.homology_rank(q) for q in qs}


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get("BRAIDHOM_THREADS", "1")))
    except ValueError:
        return 1


def _merge_coefficient_vectors(system, n: int, F: CoefficientField, a: int, b: int, offset: int):
    """For each coefficient basis vector, the signed shuffle sum merging a block
    of size a with the following block of size b, as {index: field scalar}."""
    lifted = [(rec.sign, [g + offset for g in rec.braid_word()]) for rec in shuffles(a, b)]
    out = []
    for idx in range(system.dim):
        acc = {}
        for sign, moves in lifted:
            for j, cf in system.apply_moves(moves, idx).items():
                s = F.add(acc.get(j, F.zero), F.mul(F.convert(sign), F.convert(cf)))
                if s == 0:
                    acc.pop(j, None)
                else:
                    acc[j] = s
        out.append(acc)
    return out


def complex_for_system(system, n: int, F: CoefficientField) -> GradedComplex:
    """The cellular complex of the n-strand configuration with the given coefficients."""
    if n < 1:
        raise ValueError("need n >= 1")
    dim = system.dim
    basis = {}
    comps = {}
    for q in range(n + 1, 2 * n + 1):
        comps[q] = compositions(n, q - n)
        basis[q] = [(lam, idx) for lam in comps[q] for idx in range(dim)]
    merge_cache = {}
    diff = {}
    for q in range(n + 2, 2 * n + 1):
        src = comps[q]
        tgt_index = {lam: k for k, lam in enumerate(comps[q - 1])}
        cols = []
        for lam in src:
            offset = 0
            merges = []
            for i in range(len(lam) - 1):
                a, b = lam[i], lam[i + 1]
                merged = lam[:i] + (a + b,) + lam[i + 2:]
                key = (a, b, offset)
                if key not in merge_cache:
                    merge_cache[key] = _merge_coefficient_vectors(system, n, F, a, b, offset)
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
        diff[q] = SparseMatrix.from_columns(len(basis[q - 1]), cols)
    return GradedComplex(basis, diff, F)


def fnf_complex(V: BraidedVectorSpace, n: int, F: CoefficientField) -> GradedComplex:
    """The cellular complex computing braid group homology with coefficients V^(x)n."""
    return complex_for_system(TensorSystem(V, n), n, F)


def homology_for_system(system, n: int, F: CoefficientField) -> list[int]:
    cx = complex_for_system(system, n, F)
    table = cx.homology_table()
    return [table.get(2 * n - j, 0) for j in range(n + 1)]


def braid_homology(V: BraidedVectorSpace, n: int, F: CoefficientField) -> list[int]:
    """Ranks of H_j(B_n; V^(x)n) over F for j = 0..n."""
    return homology_for_system(TensorSystem(V, n), n, F)
