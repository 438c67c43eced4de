"""
chevalley.py

Simple Lie algebras over QQ in a Chevalley basis.

Cartan matrices follow Bourbaki numbering with A_ij = <alpha_i^vee, alpha_j>
= alpha_j(h_i). Positive roots are generated by simple-root strings and
sorted by height, then by descending coefficient vector, so the simple roots
are roots 1..l. Structure constants N_{r,s} are fixed by the
extraspecial-pair convention (N > 0 on extraspecial pairs) and extended to
all pairs by the Jacobi and cyclic identities.

Basis order: x_1..x_N (positive root vectors), y_1..y_N (negative root
vectors), h_1..h_l (simple coroots).
"""
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from sympy import QQ

from .errors import InputError, PropertyViolation
from .exactla import rational, is_integral, to_int
from .liecore import LieAlgebra, Element, check_jacobi
from .utils import derive_seed

EXHAUSTIVE_JACOBI_MAX_DIM = 133
SAMPLED_JACOBI_TRIPLES = 100000

RANKS = {
    "A": (1, None),
    "B": (2, None),
    "C": (3, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}

E_EDGES = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]


def check_type(type_, rank):
    """Raise InputError unless (type_, rank) names a simple Lie algebra."""
    if type_ not in RANKS:
        raise InputError(f"unknown Cartan type {type_!r}")
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise InputError(f"rank must be an integer, got {rank!r}")
    low, high = RANKS[type_]
    if rank < low or (high is not None and rank > high):
        raise InputError(f"no simple Lie algebra of type {type_}{rank}")


def cartan_matrix(type_, rank):
    """Cartan matrix as a list of rows, Bourbaki numbering."""
    check_type(type_, rank)
    l = rank
    A = [[2 if i == j else 0 for j in range(l)] for i in range(l)]

    def link(i, j, aij=-1, aji=-1):
        A[i - 1][j - 1] = aij
        A[j - 1][i - 1] = aji

    if type_ in "ABC":
        for i in range(1, l):
            link(i, i + 1)
        if type_ == "B":
            link(l - 1, l, -1, -2)
        elif type_ == "C":
            link(l - 1, l, -2, -1)
    elif type_ == "D":
        for i in range(1, l - 1):
            link(i, i + 1)
        link(l - 2, l)
    elif type_ == "E":
        for i, j in E_EDGES:
            if i <= l and j <= l:
                link(i, j)
    elif type_ == "F":
        link(1, 2)
        link(2, 3, -1, -2)
        link(3, 4)
    elif type_ == "G":
        link(1, 2, -3, -1)
    return A


def _symmetrizer(A):
    """d_i with d_i A_ij = d_j A_ji, smallest d_i equal to 1."""
    l = len(A)
    d = [None] * l
    d[0] = QQ(1)
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(l):
            if j != i and A[i][j] and d[j] is None:
                d[j] = d[i] * QQ(A[i][j], A[j][i])
                queue.append(j)
    low = min(d)
    return tuple(x / low for x in d)


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _neg(u):
    return tuple(-a for a in u)


@dataclass(frozen=True)
class RootSystem:
    """Root system of a simple type, positive roots in simple-root coordinates."""

    type: str
    rank: int
    cartan_matrix: tuple
    positive_roots: tuple
    symmetrizer: tuple
    root_index: dict = field(repr=False, compare=False)

    @property
    def num_positive(self):
        return len(self.positive_roots)

    def unit(self, i):
        return tuple(1 if k == i else 0 for k in range(self.rank))

    def height(self, root):
        return sum(root)

    def is_positive_root(self, v):
        return tuple(v) in self.root_index

    def is_root(self, v):
        v = tuple(v)
        return v in self.root_index or _neg(v) in self.root_index

    def is_positive(self, v):
        return any(c > 0 for c in v)

    def inner(self, u, v):
        """(u, v) = Σ u_i v_j d_i A_ij."""
        A, d = self.cartan_matrix, self.symmetrizer
        total = QQ(0)
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b and A[i][j]:
                    total += a * b * d[i] * A[i][j]
        return total

    def norm2(self, v):
        return self.inner(v, v)

    def pairing(self, root, i):
        """<root, alpha_i^vee> = Σ_j root_j A_ij."""
        return sum(c * self.cartan_matrix[i][j] for j, c in enumerate(root))

    def coroot(self, root):
        """Coefficients of h_root on h_1..h_l: k_i d_i / d_root."""
        d_root = self.norm2(root) / 2
        return tuple(k * self.symmetrizer[i] / d_root for i, k in enumerate(root))

    def p_value(self, beta, alpha):
        """Largest p with beta − p·alpha a root."""
        p, v = 0, _sub(beta, alpha)
        while self.is_root(v):
            p += 1
            v = _sub(v, alpha)
        return p

    @property
    def highest_root(self):
        return self.positive_roots[-1]

    def reflect_to_dominant(self, values):
        """Move a characteristic (α_i(h) values) into the dominant chamber."""
        values = list(values)
        A = self.cartan_matrix
        while True:
            for i, a in enumerate(values):
                if a < 0:
                    # s_i: a_j <- a_j − a_i A_ij
                    values = [v - a * A[i][j] for j, v in enumerate(values)]
                    break
            else:
                return values


def root_system(type_, rank):
    """
    Build the root system of type_ rank.

    Positive roots are sorted by height; roots of one height come in
    descending (reverse lexicographic) order of their coefficient vectors,
    so alpha_i is root i and, in A3, alpha_1 + alpha_2 precedes alpha_2 + alpha_3.
    """
    A = cartan_matrix(type_, rank)
    l = rank
    simple = [tuple(1 if k == i else 0 for k in range(l)) for i in range(l)]
    known = set(simple)
    layer = list(simple)
    while layer:
        nxt = set()
        for beta in layer:
            for i in range(l):
                alpha = simple[i]
                p, v = 0, _sub(beta, alpha)
                while v in known:
                    p += 1
                    v = _sub(v, alpha)
                q = p - sum(c * A[i][j] for j, c in enumerate(beta))
                if q > 0:
                    gamma = _add(beta, alpha)
                    if gamma not in known:
                        nxt.add(gamma)
        known |= nxt
        layer = sorted(nxt)
    roots = sorted(known, key=lambda r: (sum(r), tuple(-c for c in r)))
    index = {r: k + 1 for k, r in enumerate(roots)}
    return RootSystem(type_, rank, tuple(tuple(r) for r in A), tuple(roots), _symmetrizer(A), index)


class StructureConstants:
    """N_{r,s} for all roots r, s with the extraspecial-pair signs."""

    def __init__(self, roots):
        self.R = roots
        self._memo = {}
        self.extraspecial = {}
        for xi in roots.positive_roots:
            if sum(xi) == 1:
                continue
            for i in range(roots.rank):
                beta = _sub(xi, roots.unit(i))
                if roots.is_positive_root(beta):
                    self.extraspecial[xi] = (roots.unit(i), beta)
                    break

    def __call__(self, r, s):
        R = self.R
        t = _add(r, s)
        if not R.is_root(t):
            return QQ(0)
        key = (r, s)
        if key in self._memo:
            return self._memo[key]
        rp, sp = R.is_positive(r), R.is_positive(s)
        if rp and sp:
            value = self._positive(r, s, t)
        elif not rp and not sp:
            value = -self(_neg(r), _neg(s))
        elif rp:
            # r + s + (−t) = 0
            if R.is_positive(t):
                value = R.norm2(t) / R.norm2(r) * self(s, _neg(t))
            else:
                value = R.norm2(t) / R.norm2(s) * self(_neg(t), r)
        else:
            value = -self(s, r)
        expected = R.p_value(s, r) + 1
        if abs(value) != expected:
            raise PropertyViolation(f"|N({r}, {s})| = {value}, expected {expected}")
        self._memo[key] = value
        return value

    def _positive(self, a, b, xi):
        R = self.R
        gamma, delta = self.extraspecial[xi]
        if (a, b) == (gamma, delta):
            return QQ(R.p_value(delta, gamma) + 1)
        if (a, b) == (delta, gamma):
            return -self(gamma, delta)
        total = QQ(0)
        bg = _sub(b, gamma)
        if R.is_root(bg):
            total += self(b, _neg(gamma)) * self(a, _neg(delta)) / R.norm2(bg)
        ag = _sub(a, gamma)
        if R.is_root(ag):
            total += self(_neg(gamma), a) * self(b, _neg(delta)) / R.norm2(ag)
        return R.norm2(xi) / self(gamma, delta) * total


@dataclass(frozen=True)
class ChevalleyBasis:
    """Basis indices of the root vectors and coroots inside `algebra`."""

    algebra: LieAlgebra
    roots: RootSystem
    x: tuple
    y: tuple
    h: tuple

    def root_vector(self, root):
        """Index of e_root for a nonzero root vector."""
        root = tuple(root)
        if root in self.roots.root_index:
            return self.x[self.roots.root_index[root] - 1]
        neg = _neg(root)
        if neg in self.roots.root_index:
            return self.y[self.roots.root_index[neg] - 1]
        raise InputError(f"{root} is not a root of {self.algebra.name}")


@lru_cache(maxsize=None)
def build_simple(type_, rank):
    """
    Build the simple Lie algebra type_ rank over QQ.

    The Jacobi identity is checked on every basis triple up to dimension
    133 and on a seeded sample of triples above it; the outcome is kept as
    algebra.jacobi = (mode, triples checked).

    Returns:
        tuple: (LieAlgebra, RootSystem, ChevalleyBasis).

    Raises:
        InputError: For an invalid type or rank.
        PropertyViolation: If a structure constant breaks the integrality
            bounds or the Jacobi identity fails.
    """
    R = root_system(type_, rank)
    N, l = R.num_positive, R.rank
    nstruct = StructureConstants(R)
    labels = [f"x{k + 1}" for k in range(N)] + [f"y{k + 1}" for k in range(N)] + [f"h{i + 1}" for i in range(l)]
    x_idx = tuple(range(N))
    y_idx = tuple(range(N, 2 * N))
    h_idx = tuple(range(2 * N, 2 * N + l))

    vectors = [(r, x_idx[k]) for k, r in enumerate(R.positive_roots)]
    vectors += [(_neg(r), y_idx[k]) for k, r in enumerate(R.positive_roots)]
    where = {r: idx for r, idx in vectors}

    table = {}
    for r, a in vectors:
        for s, b in vectors:
            if a >= b:
                continue
            t = _add(r, s)
            if not any(t):
                pos = r if R.is_positive(r) else s
                sign = 1 if pos == r else -1
                table[(a, b)] = {h_idx[i]: sign * c for i, c in enumerate(R.coroot(pos)) if c}
            elif R.is_root(t):
                n = nstruct(r, s)
                if abs(n) > 3:
                    raise PropertyViolation(f"N({r}, {s}) = {n} exceeds 3")
                table[(a, b)] = {where[t]: n}
    for i in range(l):
        for s, b in vectors:
            c = R.pairing(s, i)
            if abs(c) > 3:
                raise PropertyViolation(f"<{s}, alpha_{i + 1}^vee> = {c} exceeds 3")
            if c:
                table[(h_idx[i], b)] = {b: QQ(c)}

    for coeffs in table.values():
        if not all(is_integral(c) for c in coeffs.values()):
            raise PropertyViolation(f"non-integral structure constant in {type_}{rank}")

    algebra = LieAlgebra(labels, table, name=f"{type_}{rank}", rank=l, cartan=h_idx)
    algebra.root_system = R
    basis = ChevalleyBasis(algebra, R, x_idx, y_idx, h_idx)
    algebra.chevalley = basis
    if algebra.dim <= EXHAUSTIVE_JACOBI_MAX_DIM:
        algebra.jacobi = ("exhaustive", check_jacobi(algebra))
    else:
        rng = np.random.default_rng(derive_seed(0, algebra.name))
        algebra.jacobi = ("sampled", check_jacobi(algebra, samples=SAMPLED_JACOBI_TRIPLES, rng=rng))
    return algebra, R, basis


def weighted_dynkin(h):
    """
    Characteristic α_i(h) of an element of the Cartan span, Bourbaki order.

    Raises:
        InputError: If h has components outside the Cartan subalgebra or the
            algebra was not built by build_simple.
    """
    g = h.parent
    R = g.root_system
    if R is None:
        raise InputError(f"{g.name} carries no root system")
    cartan = set(g.cartan)
    if any(k not in cartan for k in h.support()):
        raise InputError("element is not in the Cartan subalgebra")
    A = R.cartan_matrix
    values = []
    for j in range(R.rank):
        v = sum((h.coeffs[g.cartan[i]] * A[i][j] for i in range(R.rank)), QQ(0))
        values.append(to_int(v) if is_integral(v) else v)
    return values


def element_from_combination(basis, terms):
    """
    Element Σ coeff·b for terms (kind, index, coeff), kind in x|y|h, index 1-based.

    Raises:
        InputError: If an index is out of range for its kind.
    """
    g = basis.algebra
    coeffs = [QQ(0)] * g.dim
    groups = {"x": basis.x, "y": basis.y, "h": basis.h}
    for kind, index, coeff in terms:
        if kind not in groups:
            raise InputError(f"unknown basis kind {kind!r}")
        group = groups[kind]
        if not 1 <= index <= len(group):
            raise InputError(f"{kind}[{index}] out of range 1..{len(group)}")
        coeffs[group[index - 1]] += rational(coeff)
    return Element(g, tuple(coeffs))


def element_from_roots(basis, terms):
    """Element Σ coeff·e_root for terms (root vector, coeff)."""
    g = basis.algebra
    coeffs = [QQ(0)] * g.dim
    for root, coeff in terms:
        coeffs[basis.root_vector(root)] += rational(coeff)
    return Element(g, tuple(coeffs))
