"""
liecore.py

Lie algebras over QQ given by sparse structure constants, their elements,
and subspaces kept in reduced echelon form.

The subspace calculus (centralizer, center, normalizer, Killing-orthogonal,
ad-eigenspaces) all reduces to kernels and spans of exact matrices, so every
subspace returned is canonical: two equal subspaces have equal bases.
"""
import itertools
from functools import cached_property

import numpy as np
from sympy import QQ

from .errors import InputError, UnsupportedError, PropertyViolation
from .exactla import QMatrix, Frame, rational, rref, row_basis, kernel_basis


class LieAlgebra:
    """
    A Lie algebra with basis b_0..b_{n-1} and table [b_i, b_j] = Σ c_k b_k.

    Args:
        labels (list of str): Basis labels.
        table (dict): {(i, j): {k: c}} for i < j; the other order is filled
            in by antisymmetry. Missing pairs bracket to zero.
        name (str): Display name, e.g. "E6" or "so8".
        rank (int or None): Rank of the algebra when known (semisimple case).
        cartan (list of int or None): Indices of a Cartan subalgebra basis.
        matrices (list of QMatrix or None): Matrix realization of the basis.
    """

    def __init__(self, labels, table, name=None, rank=None, cartan=None, matrices=None):
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.name = name or f"L{self.dim}"
        self.rank = rank
        self.cartan = list(cartan) if cartan is not None else None
        self.matrices = matrices
        self.root_system = None
        self.jacobi = None
        self._table = {}
        for (i, j), coeffs in table.items():
            if i == j:
                raise InputError(f"[b{i}, b{i}] must be zero")
            coeffs = {k: rational(c) for k, c in coeffs.items()}
            coeffs = {k: c for k, c in coeffs.items() if c}
            if not coeffs:
                continue
            if not (0 <= i < self.dim and 0 <= j < self.dim) or any(not 0 <= k < self.dim for k in coeffs):
                raise InputError(f"structure constant index out of range at ({i}, {j})")
            self._table[(i, j)] = coeffs
            self._table[(j, i)] = {k: -c for k, c in coeffs.items()}
        self._rows = {}
        for (i, j), coeffs in self._table.items():
            self._rows.setdefault(i, {})[j] = coeffs

    def __repr__(self):
        return f"<LieAlgebra {self.name} dim={self.dim}>"

    @classmethod
    def from_matrices(cls, mats, labels=None, name=None, rank=None):
        """
        Structure constants of the matrix Lie algebra spanned by `mats`.

        Raises:
            InputError: If the span is not closed under commutators.
        """
        mats = list(mats)
        size = mats[0].rows
        labels = labels or [f"b{i + 1}" for i in range(len(mats))]
        frame = Frame(QMatrix.from_rows([_flatten(m) for m in mats], size * size))
        table = {}
        for i, j in itertools.combinations(range(len(mats)), 2):
            comm = mats[i] @ mats[j] - mats[j] @ mats[i]
            if comm.is_zero():
                continue
            try:
                coords = frame.coordinates(_flatten(comm))
            except InputError as e:
                raise InputError(f"[{labels[i]}, {labels[j]}] leaves the span") from e
            table[(i, j)] = {k: c for k, c in enumerate(coords) if c}
        algebra = cls(labels, table, name=name, rank=rank, matrices=mats)
        algebra.frame = frame
        return algebra

    def basis_bracket(self, i, j):
        """[b_i, b_j] as a sparse dict {k: c}."""
        return self._table.get((i, j), {})

    def element(self, coeffs):
        return Element(self, tuple(rational(c) for c in coeffs))

    def zero(self):
        return Element(self, (QQ(0),) * self.dim)

    def basis(self, i):
        coeffs = [QQ(0)] * self.dim
        coeffs[i] = QQ(1)
        return Element(self, tuple(coeffs))

    def index(self, label):
        try:
            return self.labels.index(label)
        except ValueError as e:
            raise InputError(f"{self.name} has no basis element {label!r}") from e

    def to_matrix(self, x):
        """Matrix of x in the realization given to from_matrices."""
        if self.matrices is None:
            raise InputError(f"{self.name} has no matrix realization")
        size = self.matrices[0].rows
        out = QMatrix.zeros(size, size)
        for k in x.support():
            out = out + self.matrices[k].scale(x.coeffs[k])
        return out

    def from_matrix(self, m):
        """Element whose matrix is m; InputError if m is not in the algebra."""
        if self.matrices is None:
            raise InputError(f"{self.name} has no matrix realization")
        try:
            return self.element(self.frame.coordinates(_flatten(m)))
        except InputError as e:
            raise InputError(f"matrix is not in {self.name}") from e

    @cached_property
    def killing_gram(self):
        """Gram matrix of the Killing form on the basis."""
        rows = {}
        for i in range(self.dim):
            row = _killing_row(self, self.basis(i))
            rows[i] = {j: v for j, v in enumerate(row) if v}
        return QMatrix.from_dod(rows, (self.dim, self.dim))

    def is_semisimple(self):
        """Cartan's criterion: the Killing form is nondegenerate."""
        return len(rref(self.killing_gram)[1]) == self.dim


def _flatten(m):
    return [v for row in m.to_rows() for v in row]


class Element:
    """A vector of coefficients on the basis of `parent`."""

    __slots__ = ("parent", "coeffs")

    def __init__(self, parent, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != parent.dim:
            raise InputError(f"{len(coeffs)} coefficients for a {parent.dim}-dimensional algebra")
        self.parent = parent
        self.coeffs = coeffs

    def support(self):
        return [k for k, c in enumerate(self.coeffs) if c]

    def is_zero(self):
        return not any(self.coeffs)

    def _same(self, other):
        if not isinstance(other, Element) or other.parent is not self.parent:
            raise InputError("elements belong to different algebras")

    def __add__(self, other):
        self._same(other)
        return Element(self.parent, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._same(other)
        return Element(self.parent, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Element(self.parent, tuple(-a for a in self.coeffs))

    def __mul__(self, c):
        c = rational(c)
        return Element(self.parent, tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Element) and other.parent is self.parent and other.coeffs == self.coeffs

    def __hash__(self):
        return hash((id(self.parent), self.coeffs))

    def __repr__(self):
        terms = [f"({c})*{self.parent.labels[k]}" for k, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


def _check_parent(x, y):
    if x.parent is not y.parent:
        raise InputError("elements belong to different algebras")


def bracket(x, y):
    """[x, y] by bilinear extension of the structure constants."""
    _check_parent(x, y)
    g = x.parent
    acc = {}
    ys = [(j, b) for j, b in enumerate(y.coeffs) if b]
    for i, a in enumerate(x.coeffs):
        if not a:
            continue
        row = g._rows.get(i)
        if not row:
            continue
        for j, b in ys:
            coeffs = row.get(j)
            if coeffs:
                ab = a * b
                for k, c in coeffs.items():
                    acc[k] = acc.get(k, QQ(0)) + ab * c
    out = [QQ(0)] * g.dim
    for k, c in acc.items():
        out[k] = c
    return Element(g, tuple(out))


def ad_matrix(x):
    """Matrix of ad x; column j holds the coefficients of [x, b_j]."""
    g = x.parent
    dod = {}
    for i, a in enumerate(x.coeffs):
        if not a:
            continue
        for j, coeffs in g._rows.get(i, {}).items():
            for k, c in coeffs.items():
                row = dod.setdefault(k, {})
                row[j] = row.get(j, QQ(0)) + a * c
    return QMatrix.from_dod(dod, (g.dim, g.dim))


def _killing_row(g, s):
    """[killing(b_j, s) for all j] = [trace(ad b_j · ad s)]."""
    A = ad_matrix(s).to_dod()
    out = [QQ(0)] * g.dim
    if not A:
        return out
    for j in range(g.dim):
        acc = QQ(0)
        # (ad b_j)_{m,k} = c where [b_j, b_k] = Σ c b_m
        for k, coeffs in g._rows.get(j, {}).items():
            for m, c in coeffs.items():
                a = A.get(k, {}).get(m)
                if a:
                    acc += c * a
        out[j] = acc
    return out


def killing(x, y):
    """Killing form trace(ad x · ad y)."""
    _check_parent(x, y)
    row = _killing_row(x.parent, y)
    return sum((a * b for a, b in zip(x.coeffs, row) if a), QQ(0))


class Subspace:
    """
    A subspace of a Lie algebra, stored by its reduced echelon basis.

    Use Subspace.span to build one from arbitrary vectors.
    """

    def __init__(self, parent, basis, pivots):
        self.parent = parent
        self.basis = basis
        self.pivots = list(pivots)
        self._dod = basis.to_dod()

    @classmethod
    def span(cls, parent, vectors):
        rows = [v.coeffs if isinstance(v, Element) else tuple(v) for v in vectors]
        if not rows:
            return cls(parent, QMatrix.zeros(0, parent.dim), [])
        basis, pivots = row_basis(QMatrix.from_rows(rows, parent.dim))
        return cls(parent, basis, pivots)

    @classmethod
    def whole(cls, parent):
        return cls(parent, QMatrix.identity(parent.dim), range(parent.dim))

    @classmethod
    def zero(cls, parent):
        return cls(parent, QMatrix.zeros(0, parent.dim), [])

    @property
    def dim(self):
        return self.basis.rows

    def elements(self):
        return [Element(self.parent, tuple(r)) for r in self.basis.to_rows()]

    def coordinates(self, v):
        """
        Coordinates of v in the echelon basis.

        Raises:
            InputError: If v is not in the subspace.
        """
        coeffs = v.coeffs if isinstance(v, Element) else tuple(v)
        coords = [coeffs[p] for p in self.pivots]
        rebuilt = [QQ(0)] * self.parent.dim
        dod = self._dod
        for r, c in enumerate(coords):
            if c:
                for j, b in dod.get(r, {}).items():
                    rebuilt[j] += c * b
        if tuple(rebuilt) != tuple(coeffs):
            raise InputError("vector is not in the subspace")
        return coords

    def contains(self, v):
        try:
            self.coordinates(v)
        except InputError:
            return False
        return True

    def __contains__(self, v):
        return self.contains(v)

    def __add__(self, other):
        if other.parent is not self.parent:
            raise InputError("subspaces of different algebras")
        return Subspace.span(self.parent, self.elements() + other.elements())

    def intersect(self, other):
        if other.parent is not self.parent:
            raise InputError("subspaces of different algebras")
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.parent)
        # a·U = b·V  <=>  [U^T | -V^T] (a, b) = 0
        stacked = QMatrix.hstack(self.basis.transpose(), (-other.basis).transpose())
        ker = kernel_basis(stacked)
        vectors = []
        rows = self.basis.to_rows()
        for sol in ker.to_rows():
            vec = [QQ(0)] * self.parent.dim
            for a, row in zip(sol[:self.dim], rows):
                if a:
                    for j, b in enumerate(row):
                        vec[j] += a * b
            vectors.append(vec)
        return Subspace.span(self.parent, vectors)

    def is_subspace_of(self, other):
        return all(other.contains(v) for v in self.elements())

    def __eq__(self, other):
        return (isinstance(other, Subspace) and other.parent is self.parent
                and self.basis == other.basis)

    def __hash__(self):
        return hash((id(self.parent), self.basis))

    def __repr__(self):
        return f"<Subspace dim={self.dim} of {self.parent.name}>"


def image(x, S):
    """[x, S] = span{[x, s]}."""
    return Subspace.span(x.parent, [bracket(x, s) for s in S.elements()])


def bracket_space(S, T):
    """[S, T] = span{[s, t]}."""
    return Subspace.span(S.parent, [bracket(s, t) for s in S.elements() for t in T.elements()])


def is_subalgebra(S):
    elems = S.elements()
    return all(S.contains(bracket(a, b)) for a, b in itertools.combinations(elems, 2))


def centralizer(x):
    """g^x = ker ad x."""
    ker = kernel_basis(ad_matrix(x))
    return Subspace(x.parent, ker, rref(ker)[1])


def center_of(S):
    """
    The center of the subalgebra S.

    Raises:
        InputError: If S is not closed under the bracket.
    """
    elems = S.elements()
    d = len(elems)
    if d == 0:
        return S
    coords = {}
    for i, j in itertools.combinations(range(d), 2):
        b = bracket(elems[i], elems[j])
        if b.is_zero():
            continue
        try:
            coords[(i, j)] = S.coordinates(b)
        except InputError as e:
            raise InputError("subspace is not closed under the bracket") from e
    # Σ_i c_i [s_i, s_j] = 0 for every j
    dod = {}
    for j in range(d):
        for i in range(d):
            if i == j:
                continue
            vec = coords.get((i, j)) if i < j else coords.get((j, i))
            if vec is None:
                continue
            sign = 1 if i < j else -1
            for k, v in enumerate(vec):
                if v:
                    dod.setdefault(j * d + k, {})[i] = sign * v
    ker = kernel_basis(QMatrix.from_dod(dod, (d * d, d)))
    return Subspace.span(S.parent, _combine_rows(ker, S))


def _combine_rows(coeff_rows, S):
    """Elements Σ_k c_k s_k for each coefficient row."""
    out = []
    rows = S.basis.to_rows()
    for coeffs in coeff_rows.to_rows():
        vec = [QQ(0)] * S.parent.dim
        for c, row in zip(coeffs, rows):
            if c:
                for j, b in enumerate(row):
                    if b:
                        vec[j] += c * b
        out.append(vec)
    return out


def normalizer(S):
    """{y ∈ g : [y, S] ⊆ S}."""
    g = S.parent
    if S.dim == g.dim:
        return Subspace.whole(g)
    # rows of Q annihilate S; condition is Q·ad(s)·y = 0 for each s
    Q = kernel_basis(S.basis) if S.dim else QMatrix.identity(g.dim)
    K = QMatrix.identity(g.dim)
    for s in S.elements():
        if K.rows == 0:
            break
        eqs = Q @ ad_matrix(s) @ K.transpose()
        T = kernel_basis(eqs)
        K = T @ K if T.rows else QMatrix.zeros(0, g.dim)
    return Subspace.span(g, K.to_rows())


def orthogonal(S):
    """
    Killing-orthogonal {y : killing(y, s) = 0 for all s ∈ S}.

    Raises:
        UnsupportedError: If the Killing form of the parent is degenerate.
    """
    g = S.parent
    if not g.is_semisimple():
        raise UnsupportedError(f"Killing form of {g.name} is degenerate")
    if S.dim == 0:
        return Subspace.whole(g)
    M = S.basis @ g.killing_gram
    ker = kernel_basis(M)
    return Subspace(g, ker, rref(ker)[1])


def restricted_matrix(x, S):
    """
    Matrix of ad x on an ad-x-stable S, in S's echelon basis.

    Raises:
        InputError: If [x, S] is not contained in S.
    """
    d = S.dim
    dod = {}
    for i, s in enumerate(S.elements()):
        try:
            coords = S.coordinates(bracket(x, s))
        except InputError as e:
            raise InputError("subspace is not stable under ad x") from e
        for k, c in enumerate(coords):
            if c:
                dod.setdefault(k, {})[i] = c
    return QMatrix.from_dod(dod, (d, d))


def eigenspaces(x, S):
    """
    Decomposition of S into eigenspaces of ad x.

    Eigenvalues are searched among the integers in [−2N, 2N], N = dim g.

    Returns:
        list of (QQ, Subspace): sorted by eigenvalue.

    Raises:
        InputError: If S is not ad-x stable.
        UnsupportedError: If the restriction is not diagonalizable with
            integer spectrum.
    """
    g = x.parent
    if S.dim == 0:
        return []
    A = restricted_matrix(x, S)
    coeffs = A.charpoly()
    bound = 2 * g.dim
    pairs, total = [], 0
    for lam in range(-bound, bound + 1):
        value = QQ(0)
        for c in coeffs:
            value = value * lam + c
        if value:
            continue
        shifted = A - QMatrix.identity(S.dim).scale(lam)
        ker = kernel_basis(shifted)
        space = Subspace.span(g, _combine_rows(ker, S))
        pairs.append((QQ(lam), space))
        total += space.dim
    if total != S.dim:
        raise UnsupportedError("restriction of ad x is not diagonalizable with integer eigenvalues")
    return pairs


def check_jacobi(algebra, samples=None, rng=None):
    """
    Check the Jacobi identity on basis triples.

    Args:
        algebra (LieAlgebra): Algebra to check.
        samples (int or None): None checks every triple i < j < k; otherwise
            that many random triples are drawn from rng.
        rng (numpy.random.Generator or None): Source of random triples.

    Returns:
        int: Number of triples checked.

    Raises:
        PropertyViolation: On the first failing triple.
    """
    n = algebra.dim
    if samples is None:
        triples = itertools.combinations(range(n), 3)
    else:
        rng = rng if rng is not None else np.random.default_rng(0)
        triples = (tuple(int(v) for v in rng.choice(n, size=3, replace=False)) for _ in range(samples))
    count = 0
    for i, j, k in triples:
        acc = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for m, u in algebra.basis_bracket(a, b).items():
                for r, v in algebra.basis_bracket(m, c).items():
                    acc[r] = acc.get(r, QQ(0)) + u * v
        if any(acc.values()):
            raise PropertyViolation(
                f"Jacobi fails on ({algebra.labels[i]}, {algebra.labels[j]}, {algebra.labels[k]})")
        count += 1
    return count
