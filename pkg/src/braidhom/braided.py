"""Finite permutation groups, conjugation racks, cocycles, and braided vector spaces.

Permutations on m points are tuples p of length m with p[i] the image of i
(0-based); products compose right-to-left, so pmul(g, h) applies h first.
Conjugation is written b^a = a^-1 b a throughout, matching the rack operation.

A braided vector space stores its braiding as a sparse table on basis pairs.
For rack-type spaces every column of the braiding has exactly one entry
(+-cocycle times a basis pair), and the action of braid words on tensor powers
follows that monomial fast path.  The basis of a tensor power V^(x)n is the set
of length-n words over the basis of V in lexicographic order.

All structures are immutable after construction and safe for concurrent reads.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .exactla import QQ, SparseMatrix, rank

Perm = tuple[int, ...]


# permutation primitives -----------------------------------------------------

def identity_perm(m: int) -> Perm:
    return tuple(range(m))


def pmul(g: Perm, h: Perm) -> Perm:
    """Composite 'h then g' (right-to-left, like function composition)."""
    return tuple(g[h[i]] for i in range(len(g)))


def pinv(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, gi in enumerate(g):
        out[gi] = i
    return tuple(out)


def conj(b: Perm, a: Perm) -> Perm:
    """b^a = a^-1 b a."""
    return pmul(pinv(a), pmul(b, a))


def perm_order(g: Perm) -> int:
    n = 1
    h = g
    e = identity_perm(len(g))
    while h != e:
        h = pmul(h, g)
        n += 1
    return n


def cycles(g: Perm) -> list[tuple[int, ...]]:
    """Cycle decomposition including fixed points, cycles led by their minimum."""
    seen = [False] * len(g)
    out = []
    for i in range(len(g)):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = g[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = g[j]
        out.append(tuple(cyc))
    return out


def cycle_type(g: Perm) -> tuple[int, ...]:
    """Non-fixed cycle lengths in decreasing order (empty for the identity)."""
    return tuple(sorted((len(c) for c in cycles(g) if len(c) > 1), reverse=True))


def cycle_notation(g: Perm) -> str:
    parts = ["(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles(g) if len(c) > 1]
    return "".join(parts) if parts else "()"


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse 1-based cycle notation like '(1 2)(3 4 5)' or '()' into a permutation."""
    out = list(range(degree))
    for grp in re.findall(r"\(([^()]*)\)", text):
        pts = [int(t) - 1 for t in grp.replace(",", " ").split()]
        for p in pts:
            if not 0 <= p < degree:
                raise ValueError(f"point {p + 1} out of range for degree {degree}")
        for k, p in enumerate(pts):
            out[p] = pts[(k + 1) % len(pts)]
    return tuple(out)


class PermGroup:
    """A finite permutation group with fully enumerated elements.

    Enumeration is breadth-first closure over the generators, capped (default
    10000 elements) because every group in scope here is tiny.
    """

    def __init__(self, degree: int, generators: list[Perm], name: str = "", cap: int = 10000):
        self.degree = degree
        self.generators = [tuple(g) for g in generators]
        for g in self.generators:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise ValueError(f"not a permutation of degree {degree}: {g}")
        self.name = name or "G"
        e = identity_perm(degree)
        seen = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = pmul(x, g)
                    if y not in seen:
                        if len(seen) >= cap:
                            raise ValueError(f"group enumeration exceeded cap {cap}")
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        self.elements = sorted(seen)
        self._index = {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Perm) -> bool:
        return g in self._index

    def conjugacy_class(self, g: Perm) -> frozenset:
        orbit = {g}
        frontier = [g]
        while frontier:
            x = frontier.pop()
            for h in self.generators:
                y = conj(x, h)
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        return frozenset(orbit)

    def conjugacy_classes(self) -> list[frozenset]:
        left = set(self.elements)
        out = []
        while left:
            g = min(left)
            cl = self.conjugacy_class(g)
            out.append(cl)
            left -= cl
        return out

    def subgroup_closure(self, gens: list[Perm]) -> frozenset:
        e = identity_perm(self.degree)
        seen = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = pmul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def center(self) -> frozenset:
        return frozenset(
            g for g in self.elements if all(pmul(g, h) == pmul(h, g) for h in self.generators)
        )

    def __repr__(self):
        return f"PermGroup({self.name}, degree={self.degree}, order={self.order})"


def load_group(text: str, name: str = "") -> PermGroup:
    """Read a group from the file format: header 'degree m', then one generator per line."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("degree"):
        raise ValueError("group file must start with 'degree m'")
    m = int(lines[0].split()[1])
    gens = [parse_cycles(ln, m) for ln in lines[1:]]
    if not gens:
        raise ValueError("group file lists no generators")
    return PermGroup(m, gens, name=name)


class ConjClassSet:
    """A conjugation-closed set of nontrivial group elements, with its class partition.

    The `rational` flag records closure under g -> g^a for all a prime to the
    order of g; it is checked and reported, never enforced.
    """

    def __init__(self, parent: PermGroup, elements):
        self.parent = parent
        elems = set(elements)
        e = identity_perm(parent.degree)
        if e in elems:
            raise ValueError("class set must consist of nontrivial elements")
        for g in elems:
            if g not in parent:
                raise ValueError(f"{cycle_notation(g)} is not in the group")
            for h in parent.generators:
                if conj(g, h) not in elems:
                    raise ValueError(
                        f"set not closed under conjugation: {cycle_notation(g)} by {cycle_notation(h)}"
                    )
        self.elements = sorted(elems)
        left = set(elems)
        self.classes = []
        while left:
            g = min(left)
            cl = parent.conjugacy_class(g)
            self.classes.append(sorted(cl))
            left -= cl
        self.rational = all(
            pow_perm(g, a) in elems
            for g in self.elements
            for a in range(1, perm_order(g))
            if _coprime(a, perm_order(g))
        )

    def __len__(self):
        return len(self.elements)

    def class_index(self, g: Perm) -> int:
        for i, cl in enumerate(self.classes):
            if g in cl:
                return i
        raise KeyError(cycle_notation(g))

    def generates_parent(self) -> bool:
        return self.parent.subgroup_closure(self.elements) == frozenset(self.parent.elements)


def pow_perm(g: Perm, a: int) -> Perm:
    out = identity_perm(len(g))
    for _ in range(a):
        out = pmul(out, g)
    return out


def _coprime(a: int, b: int) -> bool:
    while b:
        a, b = b, a % b
    return a == 1


# racks and cocycles ----------------------------------------------------------

class Rack:
    """A finite rack: a label set with a self-distributive operation (a, b) -> a^b.

    For each b the map a -> a^b must be a bijection.  `quandle` records whether
    a^a = a holds for all a.
    """

    def __init__(self, labels: list, action: dict):
        self.labels = list(labels)
        self.size = len(self.labels)
        self._idx = {lab: i for i, lab in enumerate(self.labels)}
        self.act = [[None] * self.size for _ in range(self.size)]
        for a in range(self.size):
            for b in range(self.size):
                self.act[a][b] = self._idx[action[(self.labels[a], self.labels[b])]]
        for b in range(self.size):
            if sorted(self.act[a][b] for a in range(self.size)) != list(range(self.size)):
                raise ValueError(f"a -> a^b is not a bijection for b={self.labels[b]}")
        for a in range(self.size):
            for b in range(self.size):
                for c in range(self.size):
                    lhs = self.act[self.act[c][a]][self.act[b][a]]
                    rhs = self.act[self.act[c][b]][a]
                    if lhs != rhs:
                        raise ValueError(
                            f"self-distributivity fails at ({self.labels[c]}, {self.labels[a]}, {self.labels[b]})"
                        )
        self.quandle = all(self.act[a][a] == a for a in range(self.size))
        # inv_act[v][b] = the unique a with a^b = v
        self.inv_act = [[None] * self.size for _ in range(self.size)]
        for a in range(self.size):
            for b in range(self.size):
                self.inv_act[self.act[a][b]][b] = a

    def components(self) -> list[list[int]]:
        """Orbit decomposition of the labels under all right translations."""
        seen = [False] * self.size
        comps = []
        for s in range(self.size):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            frontier = [s]
            while frontier:
                x = frontier.pop()
                for b in range(self.size):
                    for y in (self.act[x][b], self.inv_act[x][b]):
                        if not seen[y]:
                            seen[y] = True
                            comp.append(y)
                            frontier.append(y)
            comps.append(sorted(comp))
        return comps

    def __repr__(self):
        kind = "Quandle" if self.quandle else "Rack"
        return f"{kind}(size={self.size})"


@dataclass(frozen=True)
class Cocycle:
    """Scalar table x_{ab} twisting a rack braiding; must satisfy
    x_{ab} x_{a^b c} = x_{ac} x_{a^c b^c}.  Constant +-1 tables are the
    supported fast path; general nonzero scalars are accepted unoptimized.
    """

    table: tuple  # table[a][b] as a tuple of tuples, indexed like Rack.act

    @classmethod
    def constant(cls, rack: Rack, value=1) -> "Cocycle":
        if value == 0:
            raise ValueError("cocycle values must be nonzero")
        return cls(tuple(tuple(value for _ in range(rack.size)) for _ in range(rack.size)))

    def value(self, a: int, b: int):
        return self.table[a][b]

    def check(self, rack: Rack) -> None:
        n = rack.size
        for a in range(n):
            for b in range(n):
                if self.table[a][b] == 0:
                    raise ValueError("cocycle values must be nonzero")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    lhs = self.table[a][b] * self.table[rack.act[a][b]][c]
                    rhs = self.table[a][c] * self.table[rack.act[a][c]][rack.act[b][c]]
                    if lhs != rhs:
                        raise ValueError(f"cocycle condition fails at ({a}, {b}, {c})")


def conjugation_rack(G: PermGroup, c: ConjClassSet) -> Rack:
    """The quandle on c with a^b = b^-1 a b."""
    action = {}
    elems = c.elements
    eset = set(elems)
    for a in elems:
        for b in elems:
            ab = conj(a, b)
            if ab not in eset:
                raise ValueError("class set not closed under conjugation")
            action[(a, b)] = ab
    return Rack(elems, action)


def load_rack(text: str) -> tuple[Rack, Cocycle]:
    """Read a rack plus cocycle from JSON: keys 'elements', 'action', 'cocycle'."""
    obj = json.loads(text)
    labels = obj["elements"]
    by_str = {str(lab): lab for lab in labels}
    action = {}
    for a, row in obj["action"].items():
        for b, v in row.items():
            action[(by_str[a], by_str[b])] = by_str[str(v)]
    rack = Rack(labels, action)
    coc = obj.get("cocycle", 1)
    if isinstance(coc, (int, float)):
        x = Cocycle.constant(rack, int(coc))
    else:
        tbl = tuple(
            tuple(int(coc[str(labels[a])][str(labels[b])]) for b in range(rack.size))
            for a in range(rack.size)
        )
        x = Cocycle(tbl)
    x.check(rack)
    return rack, x


# braided vector spaces -------------------------------------------------------

class BraidedVectorSpace:
    """A finite-rank vector space with an invertible braiding on V (x) V.

    sigma maps the basis pair (a, b) to a list of ((c, d), coefficient) terms
    with exact integer or Fraction coefficients.  `monomial` is True when each
    pair maps to a single term, which covers every rack-type and rank-one
    space and enables the fast word-rewriting action.

    `grading`, when present, assigns a group element to each basis vector
    (the Yetter-Drinfeld degree); the degree of a word is the left-to-right
    product of its letters' degrees.
    """

    def __init__(self, labels: list, sigma: dict, grading=None, group: PermGroup | None = None,
                 rack: Rack | None = None, cocycle: Cocycle | None = None, name: str = ""):
        self.labels = list(labels)
        self.rank = len(self.labels)
        self.name = name or "V"
        self.sigma = {}
        for (a, b), terms in sigma.items():
            terms = tuple(((c, d), coeff) for (c, d), coeff in terms if coeff != 0)
            if terms:
                self.sigma[(a, b)] = terms
        self.monomial = all(len(t) == 1 for t in self.sigma.values()) and len(self.sigma) == self.rank**2
        self.grading = grading
        self.group = group
        self.rack = rack
        self.cocycle = cocycle
        self._inv = None

    def sigma_matrix(self) -> SparseMatrix:
        """The braiding as an r^2 x r^2 matrix on pair indices (a, b) -> a*r + b."""
        r = self.rank
        ent = {}
        for (a, b), terms in self.sigma.items():
            for (c, d), coeff in terms:
                ent[(c * r + d, a * r + b)] = coeff
        return SparseMatrix(r * r, r * r, ent)

    def sigma_inverse(self) -> dict:
        """Inverse braiding in the same table format; computed once on demand."""
        if self._inv is not None:
            return self._inv
        if self.monomial:
            inv = {}
            for (a, b), terms in self.sigma.items():
                (c, d), coeff = terms[0]
                if isinstance(coeff, int) and coeff in (1, -1):
                    inv[(c, d)] = (((a, b), coeff),)
                else:
                    inv[(c, d)] = (((a, b), Fraction(1) / Fraction(coeff)),)
            if len(inv) != self.rank**2:
                raise ValueError("braiding is not invertible")
            self._inv = inv
            return self._inv
        # general case: invert the r^2 x r^2 matrix exactly over Q
        from .exactla import solve_dense
        r2 = self.rank**2
        M = [[Fraction(0)] * r2 for _ in range(r2)]
        for (a, b), terms in self.sigma.items():
            for (c, d), coeff in terms:
                M[c * self.rank + d][a * self.rank + b] = Fraction(coeff)
        eye = [[Fraction(1) if i == j else Fraction(0) for j in range(r2)] for i in range(r2)]
        X = solve_dense(M, eye, QQ)
        inv = {}
        for col in range(r2):
            terms = []
            for row in range(r2):
                if X[row][col] != 0:
                    terms.append(((row // self.rank, row % self.rank), X[row][col]))
            inv[(col // self.rank, col % self.rank)] = tuple(terms)
        self._inv = inv
        return self._inv

    def word_degree(self, word: tuple[int, ...]) -> Perm:
        """Yetter-Drinfeld degree of a basis word: left-to-right product."""
        if self.grading is None:
            raise ValueError("space carries no group grading")
        g = identity_perm(self.group.degree)
        for a in word:
            g = pmul(g, self.grading[a])
        return g

    def __repr__(self):
        return f"BraidedVectorSpace({self.name}, rank={self.rank})"


def braided_space(rack: Rack, x: Cocycle, epsilon: bool = False,
                  group: PermGroup | None = None, name: str = "") -> BraidedVectorSpace:
    """The braided vector space of a rack and cocycle: sigma(a (x) b) = s x_{ab} (b (x) a^b),
    with s = -1 when epsilon is set.  When the rack came from conjugation in a
    permutation group, pass the group to attach the Yetter-Drinfeld grading.
    """
    x.check(rack)
    s = -1 if epsilon else 1
    sigma = {}
    for a in range(rack.size):
        for b in range(rack.size):
            sigma[(a, b)] = (((b, rack.act[a][b]), s * x.value(a, b)),)
    grading = None
    if group is not None:
        grading = list(rack.labels)
        for lab in grading:
            if lab not in group:
                raise ValueError("rack labels are not elements of the given group")
    return BraidedVectorSpace(rack.labels, sigma, grading=grading, group=group,
                              rack=rack, cocycle=x, name=name)


def rank_one_space(sigma_scalar, name: str = "") -> BraidedVectorSpace:
    """The rank-one braided space with braiding the given nonzero scalar.

    This is the one-element rack with constant cocycle equal to the scalar.
    """
    if sigma_scalar == 0:
        raise ValueError("braiding scalar must be nonzero")
    trivial = Rack(["*"], {("*", "*"): "*"})
    return BraidedVectorSpace(["*"], {(0, 0): (((0, 0), sigma_scalar),)},
                              rack=trivial, cocycle=Cocycle.constant(trivial, sigma_scalar),
                              name=name or f"line({sigma_scalar})")


def sign_twist(V: BraidedVectorSpace) -> BraidedVectorSpace:
    """V with its braiding negated (the sign twist V (x) eps)."""
    sigma = {pair: tuple((t, -coeff) for t, coeff in terms) for pair, terms in V.sigma.items()}
    coc = None
    if V.cocycle is not None and V.rack is not None:
        coc = Cocycle(tuple(tuple(-v for v in row) for row in V.cocycle.table))
    return BraidedVectorSpace(V.labels, sigma, grading=V.grading, group=V.group,
                              rack=V.rack, cocycle=coc, name=f"eps({V.name})")


def dual_space(V: BraidedVectorSpace) -> BraidedVectorSpace:
    """The dual braided space: braiding is the transpose of V's in dual bases.

    The transpose is generally not of rack form, so no grading or rack data is
    carried over; only the braid equation is meaningful on the dual.
    """
    sigma = {}
    for (a, b), terms in V.sigma.items():
        for (c, d), coeff in terms:
            sigma.setdefault((c, d), []).append((((a, b)), coeff))
    sigma = {pair: tuple((t, cf) for t, cf in terms) for pair, terms in sigma.items()}
    return BraidedVectorSpace([f"{lab}*" for lab in V.labels], sigma, name=f"dual({V.name})")


# braid actions on tensor powers ----------------------------------------------

def word_index(word: tuple[int, ...], r: int) -> int:
    idx = 0
    for a in word:
        idx = idx * r + a
    return idx


def index_word(idx: int, r: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        out.append(idx % r)
        idx //= r
    return tuple(reversed(out))


def apply_moves_to_vector(V: BraidedVectorSpace, n: int, moves, vec: dict) -> dict:
    """Apply a braid word to a vector in V^(x)n.

    `moves` is a list of signed generator indices (1-based, negative for the
    inverse generator), applied left to right.  `vec` maps basis words to
    exact coefficients.  Returns the same representation.
    """
    cur = dict(vec)
    for mv in moves:
        i = abs(mv) - 1
        if not 0 <= i < n - 1:
            raise ValueError(f"generator {mv} out of range for {n} strands")
        table = V.sigma if mv > 0 else V.sigma_inverse()
        nxt = {}
        for word, cf in cur.items():
            pair = (word[i], word[i + 1])
            for (c, d), coeff in table[pair]:
                w2 = word[:i] + (c, d) + word[i + 2:]
                s = nxt.get(w2, 0) + cf * coeff
                if s == 0:
                    nxt.pop(w2, None)
                else:
                    nxt[w2] = s
        cur = nxt
    return cur


def apply_moves_to_word(V: BraidedVectorSpace, n: int, moves, word: tuple[int, ...]):
    """Monomial fast path: returns (coefficient, word). Requires a monomial braiding."""
    cf = 1
    w = word
    for mv in moves:
        i = abs(mv) - 1
        table = V.sigma if mv > 0 else V.sigma_inverse()
        (c, d), coeff = table[(w[i], w[i + 1])][0]
        w = w[:i] + (c, d) + w[i + 2:]
        cf = cf * coeff
    return cf, w


def braid_word_action(V: BraidedVectorSpace, n: int, word) -> SparseMatrix:
    """Matrix of a braid word on V^(x)n, basis words ordered lexicographically.

    The word is a list of signed generator indices in {+-1, ..., +-(n-1)},
    applied left to right; the empty word gives the identity.
    """
    for mv in word:
        if mv == 0 or abs(mv) > n - 1:
            raise ValueError(f"generator index {mv} out of range for {n} strands")
    r = V.rank
    dim = r**n
    ent = {}
    if V.monomial:
        for idx in range(dim):
            w = index_word(idx, r, n)
            cf, w2 = apply_moves_to_word(V, n, word, w)
            if cf != 0:
                ent[(word_index(w2, r), idx)] = cf
    else:
        for idx in range(dim):
            w = index_word(idx, r, n)
            out = apply_moves_to_vector(V, n, word, {w: 1})
            for w2, cf in out.items():
                ent[(word_index(w2, r), idx)] = cf
    return SparseMatrix(dim, dim, ent)


@dataclass
class BraidedCheckReport:
    ok: bool
    failures: list[str]

    def __bool__(self):
        return self.ok


def check_braided(V: BraidedVectorSpace) -> BraidedCheckReport:
    """Verify invertibility, the braid equation on V^(x)3, and (when graded)
    Yetter-Drinfeld compatibility.  Diagnostic: reports the first witness of
    each failure instead of raising.
    """
    failures = []
    try:
        sm = V.sigma_matrix()
        if rank(sm, QQ) != V.rank**2:
            failures.append("braiding matrix is singular")
        else:
            V.sigma_inverse()
    except Exception as exc:
        failures.append(f"braiding not invertible: {exc}")
    if V.rank > 0 and not failures:
        lhs = braid_word_action(V, 3, [1, 2, 1])
        rhs = braid_word_action(V, 3, [2, 1, 2])
        if lhs != rhs:
            diff = set(lhs.entries.items()) ^ set(rhs.entries.items())
            key = sorted(k for k, _ in diff)[0]
            w = index_word(key[1], V.rank, 3)
            failures.append(f"braid equation fails on basis word {w}")
    if V.grading is not None and not failures:
        for (a, b), terms in sorted(V.sigma.items()):
            for (c, d), _ in terms:
                if c != b or V.grading[d] != conj(V.grading[a], V.grading[b]):
                    failures.append(f"Yetter-Drinfeld compatibility fails at pair ({a}, {b})")
                    break
            if failures:
                break
    return BraidedCheckReport(not failures, failures)
