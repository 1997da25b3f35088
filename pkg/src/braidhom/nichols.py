"""Degreewise Nichols algebra data: symmetrizer ranks, the Hopf pairing, and
skew derivations.

Degree p of the Nichols algebra of V is the image of the quantum symmetrizer
on V^(x)p; its dimension is the symmetrizer's rank.  A basis is chosen as the
pivot words of leftmost-pivot Gaussian elimination on the symmetrizer's
columns in word order.  The dual algebra is carried on the same index set:
the pairing of the dual pivot word u* with a word w is the (u, w) entry of the
symmetrizer, and the Gram matrix (symmetrizer restricted to pivot rows and
pivot columns) is invertible on every example in scope; a singular Gram
raises immediately since it signals a basis-selection bug.

Skew derivations lower the dual degree by one and are obtained by solving
against the Gram matrices: <d_v phi, x> = <phi, v * x>.  For sign-twisted
rack spaces the conjugation that appears in the Leibniz rule picks up the
cocycle sign once per letter crossed: phi^v = (cocycle)^deg(phi) times the
letterwise conjugate.
"""

from __future__ import annotations

from .braided import BraidedVectorSpace, dual_space, index_word, word_index
from .exactla import CoefficientField, SparseMatrix, solve_dense
from .shuffle import quantum_symmetrizer


class GramSingularError(RuntimeError):
    pass


class NicholsData:
    """Per-degree symmetrizer ranks, pivot-word bases, and Gram matrices.

    Built degree by degree (each degree is independent, but callers usually
    need an initial segment).  Immutable once a degree is built.
    """

    def __init__(self, V: BraidedVectorSpace, F: CoefficientField):
        self.V = V
        self.F = F
        self.dual = dual_space(V)
        self.sym: dict[int, SparseMatrix] = {}
        self.pivots: dict[int, list[int]] = {}
        self.gram: dict[int, list[list]] = {}
        self._sym_rows: dict[int, list[dict]] = {}
        self._built = -1

    def build_to(self, p: int):
        for d in range(self._built + 1, p + 1):
            self._build_degree(d)
        self._built = max(self._built, p)

    def _build_degree(self, p: int):
        F = self.F
        S = quantum_symmetrizer(self.V, p)
        self.sym[p] = S
        rows = [dict() for _ in range(self.V.rank**p)]
        for (i, j), v in S.entries.items():
            fv = F.convert(v)
            if fv != 0:
                rows[i][j] = fv
        self._sym_rows[p] = [dict(r) for r in rows]
        # leftmost-pivot elimination over columns in word order
        work = [dict(r) for r in rows if r]
        pivots = []
        while work:
            pc = min(c for r in work for c in r)
            pi = min(i for i, r in enumerate(work) if pc in r)
            prow = work.pop(pi)
            inv = F.inv(prow[pc])
            prow = {j: F.mul(inv, v) for j, v in prow.items()}
            pivots.append(pc)
            nxt = []
            for r in work:
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
            work = nxt
        pivots.sort()
        self.pivots[p] = pivots
        g = [[F.convert(S.entries.get((u, w), 0)) for w in pivots] for u in pivots]
        self.gram[p] = g
        if pivots:
            try:
                eye = [[F.one if i == j else F.zero for j in range(len(pivots))] for i in range(len(pivots))]
                solve_dense(g, eye, F)
            except ZeroDivisionError as exc:
                raise GramSingularError(
                    f"Gram matrix singular in degree {p}; pivot-word basis is unusable"
                ) from exc

    def dim(self, p: int) -> int:
        self.build_to(p)
        return len(self.pivots[p])

    def dims(self, pmax: int) -> list[int]:
        return [self.dim(p) for p in range(pmax + 1)]

    def pivot_words(self, p: int) -> list[tuple[int, ...]]:
        self.build_to(p)
        return [index_word(i, self.V.rank, p) for i in self.pivots[p]]

    def pair_dual_with_vector(self, p: int, u_index: int, vec: dict):
        """<u*, vec> for a word vector in V^(x)p with exact or field coefficients."""
        F = self.F
        self.build_to(p)
        row = self._sym_rows[p][u_index]
        s = F.zero
        for w, cf in vec.items():
            j = w if isinstance(w, int) else word_index(w, self.V.rank)
            a = row.get(j)
            if a is not None:
                s = F.add(s, F.mul(a, F.convert(cf)))
        return s

    def reduce_primal(self, p: int, vec: dict) -> list:
        """Coefficients of the class of a word vector in the pivot-word basis."""
        F = self.F
        self.build_to(p)
        piv = self.pivots[p]
        if not piv:
            return []
        rhs = [[self.pair_dual_with_vector(p, u, vec)] for u in piv]
        sol = solve_dense(self.gram[p], rhs, F)
        return [row[0] for row in sol]

    def reduce_dual(self, p: int, vec: dict) -> list:
        """Coefficients of the class of a dual word vector in the dual pivot basis.

        `vec` maps words (tuples or indices) of (V*)^(x)p to coefficients.
        """
        F = self.F
        self.build_to(p)
        piv = self.pivots[p]
        if not piv:
            return []
        rows = self._sym_rows[p]
        rhs = []
        for k, w in enumerate(piv):
            s = F.zero
            for u, cf in vec.items():
                ui = u if isinstance(u, int) else word_index(u, self.V.rank)
                a = rows[ui].get(w)
                if a is not None:
                    s = F.add(s, F.mul(a, F.convert(cf)))
            rhs.append([s])
        gram_t = [[self.gram[p][i][k] for i in range(len(piv))] for k in range(len(piv))]
        sol = solve_dense(gram_t, rhs, F)
        return [row[0] for row in sol]

    def dual_product(self, p1: int, k1: int, p2: int, k2: int) -> list:
        """Class of the product of two dual pivot-basis elements, in the dual basis.

        Products of classes are classes of concatenated representatives: the
        symmetrizer is an algebra map from the tensor algebra, so the quotient
        carries the concatenation product.
        """
        w = self.pivot_words(p1)[k1] + self.pivot_words(p2)[k2]
        return self.reduce_dual(p1 + p2, {w: 1})

    def dual_conjugate(self, p: int, letter: int, k: int) -> tuple[int, list]:
        """The dual basis element conjugated by a rack letter: phi^v.

        Returns (sign exponent applied, class coefficients).  The conjugate of
        the dual pivot word is the letterwise rack conjugate, scaled by the
        cocycle constant to the power deg(phi).
        """
        V = self.V
        if V.rack is None:
            raise ValueError("conjugation needs a rack-type space")
        word = self.pivot_words(p)[k]
        w2 = tuple(V.rack.act[a][letter] for a in word)
        sign = constant_braiding_value(V) ** p
        cls = self.reduce_dual(p, {w2: sign})
        return sign, cls


def constant_braiding_value(V: BraidedVectorSpace):
    """The constant coefficient of the braiding table (sign twist included)."""
    vals = set()
    for terms in V.sigma.values():
        for _, coeff in terms:
            vals.add(coeff)
    if len(vals) == 1:
        return vals.pop()
    raise ValueError("conjugation sign is only defined for constant braiding coefficients")


def nichols_dims(V: BraidedVectorSpace, Nmax: int, F: CoefficientField,
                 data: NicholsData | None = None):
    """Hilbert coefficients dim B(V)_n = rank of the degree-n symmetrizer, n <= Nmax.

    Returns (dims, stably_zero) where stably_zero flags two consecutive zeros
    (everything above is then zero, since the algebra is generated in degree 1).
    """
    data = data or NicholsData(V, F)
    dims = []
    stably_zero = False
    for n in range(Nmax + 1):
        dims.append(data.dim(n))
        if n >= 1 and dims[-1] == 0 and dims[-2] == 0:
            stably_zero = True
            dims.extend([0] * (Nmax - n))
            break
    return dims, stably_zero


def hopf_pairing(u: dict, phi: dict, V: BraidedVectorSpace, F: CoefficientField,
                 data: NicholsData | None = None):
    """<u, phi> = sum over permutations of (lifted braid applied to u, phi).

    u is a word vector in V^(x)m, phi a dual word vector in (V*)^(x)n; the value
    is zero when m != n.  Equals the corresponding symmetrizer entry in dual bases.
    """
    if not u or not phi:
        return F.zero
    m = len(next(iter(u)))
    n = len(next(iter(phi)))
    if m != n:
        return F.zero
    data = data or NicholsData(V, F)
    s = F.zero
    for uw, cphi in phi.items():
        ui = uw if isinstance(uw, int) else word_index(uw, V.rank)
        s = F.add(s, F.mul(F.convert(cphi), data.pair_dual_with_vector(n, ui, u)))
    return s


def check_skew_leibniz(data: NicholsData, degree_pairs, letters=None) -> list:
    """Verify the skew-derivation rule on products of dual basis elements.

    In the pairing orientation used here the rule reads
        d_v(phi psi) = d_v(phi) psi + s^deg(phi) phi d_{v^g}(psi)
    with s the constant braiding coefficient and v^g the rack conjugate of the
    letter v by the group degree g of phi.  Returns a list of failure
    descriptions (empty when the rule holds on all sampled products).
    """
    from .braided import identity_perm, pmul, conj as gconj

    V = data.V
    F = data.F
    if V.rack is None or V.group is None:
        raise ValueError("needs a rack-type space with group provenance")
    s = constant_braiding_value(V)
    letters = list(range(V.rank)) if letters is None else letters
    idx_of = {g: i for i, g in enumerate(V.labels)}
    failures = []

    def mul(p1, cls1, p2, cls2):
        out = [F.zero] * data.dim(p1 + p2)
        for k1, c1 in enumerate(cls1):
            if c1 == 0:
                continue
            for k2, c2 in enumerate(cls2):
                if c2 == 0:
                    continue
                for i, val in enumerate(data.dual_product(p1, k1, p2, k2)):
                    out[i] = F.add(out[i], F.mul(F.mul(c1, c2), val))
        return out

    def apply(v, p, cls):
        D = skew_derivation(data, v, p)
        out = [F.zero] * data.dim(p - 1)
        for (i, j), val in D.entries.items():
            if cls[j] != 0:
                out[i] = F.add(out[i], F.mul(cls[j], val))
        return out

    for p1, p2 in degree_pairs:
        data.build_to(p1 + p2)
        for k1 in range(data.dim(p1)):
            w1 = data.pivot_words(p1)[k1]
            g = identity_perm(V.group.degree)
            for a in w1:
                g = pmul(g, V.labels[a])
            e1 = [F.one if i == k1 else F.zero for i in range(data.dim(p1))]
            for k2 in range(data.dim(p2)):
                e2 = [F.one if i == k2 else F.zero for i in range(data.dim(p2))]
                for v in letters:
                    lhs = apply(v, p1 + p2, data.dual_product(p1, k1, p2, k2))
                    t1 = mul(p1 - 1, apply(v, p1, e1), p2, e2)
                    vtw = idx_of[gconj(V.labels[v], g)]
                    scaled = [F.mul(F.convert(s**p1), x) for x in e1]
                    t2 = mul(p1, scaled, p2 - 1, apply(vtw, p2, e2))
                    rhs = [F.add(a, b) for a, b in zip(t1, t2)]
                    if lhs != rhs:
                        failures.append(f"(p1={p1}, k1={k1}, p2={p2}, k2={k2}, v={v})")
    return failures


def skew_derivation(data: NicholsData, v: int, p: int) -> SparseMatrix:
    """Matrix of the skew derivation by the basis letter v, dual degree p -> p-1.

    Columns are the dual pivot basis in degree p, rows in degree p-1; defined by
    <d_v phi, x> = <phi, v . x> and solved against the Gram matrix.  The product
    v . x is the class of the concatenated word (v, x).
    """
    return skew_derivation_by_element(data, {(v,): 1}, p, 1)


def skew_derivation_by_element(data: NicholsData, z: dict, p: int, deg: int) -> SparseMatrix:
    """Skew derivation by a degree-`deg` algebra element z (a word vector), p -> p-deg."""
    F = data.F
    d = deg
    if z and len(next(iter(z))) != d:
        raise ValueError("element degree does not match deg")
    data.build_to(p)
    if not z:
        return SparseMatrix.zero(data.dim(p - d), data.dim(p))
    src = data.pivots[p]
    tgt_words = data.pivot_words(p - d)
    if not src or not tgt_words:
        return SparseMatrix.zero(data.dim(p - d), data.dim(p))
    prods = [{zw + x: cf for zw, cf in z.items()} for x in tgt_words]
    gram_t = [[data.gram[p - d][i][k] for i in range(len(tgt_words))]
              for k in range(len(tgt_words))]
    cols = []
    for u in src:
        rhs = [[data.pair_dual_with_vector(p, u, prod)] for prod in prods]
        sol = solve_dense(gram_t, rhs, F)
        cols.append({i: sol[i][0] for i in range(len(tgt_words)) if sol[i][0] != 0})
    return SparseMatrix.from_columns(data.dim(p - d), cols)
