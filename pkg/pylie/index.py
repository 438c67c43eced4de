"""
index.py

Kirillov matrices with linear-form entries, their generic rank, and the
index of Lie algebras and of modules.

A VectorMatrix stores each entry as a sparse coefficient vector on a target
basis, i.e. as a degree-one element of the symmetric algebra of the target.
Evaluating at a linear form gives an ordinary rational matrix; the generic
rank is the largest rank seen over seeded random integer forms, which is
exact with probability at least 1 − r/(2·bound + 1) per trial (r the largest
minor size).
"""
from dataclasses import dataclass, asdict

import numpy as np
from sympy import QQ, symbols, Poly

from .errors import InputError, PropertyViolation
from .exactla import QMatrix, rank, rational, linear_poly, poly_det
from .liecore import Subspace, bracket


@dataclass(frozen=True)
class LinearForm:
    """φ on a target space, one coefficient per target basis vector."""

    dim: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.dim:
            raise InputError(f"{len(self.coeffs)} coefficients for a form on a {self.dim}-dimensional space")

    @classmethod
    def of(cls, coeffs):
        coeffs = tuple(rational(c) for c in coeffs)
        return cls(len(coeffs), coeffs)

    def __call__(self, vector):
        """<φ, v> for a coefficient dict {k: c} or a sequence."""
        items = vector.items() if isinstance(vector, dict) else enumerate(vector)
        return sum((c * self.coeffs[k] for k, c in items if c), QQ(0))


class VectorMatrix:
    """
    rows × cols matrix whose entries are linear forms in `dim` variables.

    Args:
        rows (int), cols (int): Shape.
        dim (int): Number of variables (dimension of the target space).
        entries (dict): {(i, j): {k: c}}; missing cells are zero.
        target (Subspace or None): Target space the variables are coordinates on.
        labels (list of str or None): Names of the variables.
    """

    def __init__(self, rows, cols, dim, entries, target=None, labels=None):
        self.rows, self.cols, self.dim = rows, cols, dim
        self.target = target
        self.labels = labels
        self.entries = {}
        for (i, j), vec in entries.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise InputError(f"entry ({i}, {j}) outside a {rows}x{cols} matrix")
            vec = {k: rational(c) for k, c in vec.items() if c}
            if any(not 0 <= k < dim for k in vec):
                raise InputError(f"entry ({i}, {j}) refers to a variable beyond {dim}")
            if vec:
                self.entries[(i, j)] = vec

    def __repr__(self):
        return f"<VectorMatrix {self.rows}x{self.cols} over {self.dim} variables>"

    @property
    def shape(self):
        return (self.rows, self.cols)

    def entry(self, i, j):
        return dict(self.entries.get((i, j), {}))

    def is_zero(self):
        return not self.entries

    def transpose(self):
        return VectorMatrix(self.cols, self.rows, self.dim,
                            {(j, i): v for (i, j), v in self.entries.items()}, self.target, self.labels)

    def __neg__(self):
        return VectorMatrix(self.rows, self.cols, self.dim,
                            {ij: {k: -c for k, c in v.items()} for ij, v in self.entries.items()},
                            self.target, self.labels)

    def __eq__(self, other):
        return (isinstance(other, VectorMatrix) and self.shape == other.shape
                and self.dim == other.dim and self.entries == other.entries)

    __hash__ = None

    def is_antisymmetric(self):
        return self.rows == self.cols and self.transpose() == -self

    def extract(self, rows, cols):
        rows, cols = list(rows), list(cols)
        rpos = {r: a for a, r in enumerate(rows)}
        cpos = {c: b for b, c in enumerate(cols)}
        return VectorMatrix(len(rows), len(cols), self.dim,
                            {(rpos[i], cpos[j]): v for (i, j), v in self.entries.items()
                             if i in rpos and j in cpos},
                            self.target, self.labels)

    def evaluate(self, phi):
        """The rational matrix with entry (i, j) = <φ, entry(i, j)>."""
        if not isinstance(phi, LinearForm):
            phi = LinearForm.of(phi)
        if phi.dim != self.dim:
            raise InputError(f"form on {phi.dim} variables for a matrix over {self.dim}")
        dod = {}
        for (i, j), vec in self.entries.items():
            value = phi(vec)
            if value:
                dod.setdefault(i, {})[j] = value
        return QMatrix.from_dod(dod, self.shape)


def _as_elements(space):
    return space.elements() if isinstance(space, Subspace) else list(space)


def kirillov(q, V, target=None):
    """
    K(q, V, V′): entry (i, j) = [q_j, v_i] in the coordinates of V′.

    Args:
        q (Subspace or list of Element): Acting algebra.
        V (Subspace or list of Element): Module.
        target (Subspace or None): V′; defaults to V (which must then be a
            Subspace).

    Raises:
        InputError: If some [q_j, v_i] leaves the target.
    """
    if target is None:
        if not isinstance(V, Subspace):
            raise InputError("a target subspace is needed when V is a list of elements")
        target = V
    qs, vs = _as_elements(q), _as_elements(V)
    entries = {}
    for i, v in enumerate(vs):
        for j, x in enumerate(qs):
            value = bracket(x, v)
            if value.is_zero():
                continue
            try:
                coords = target.coordinates(value)
            except InputError as e:
                raise InputError(f"[q_{j + 1}, v_{i + 1}] is not in the target space") from e
            entries[(i, j)] = {k: c for k, c in enumerate(coords) if c}
    return VectorMatrix(len(vs), len(qs), target.dim, entries, target)


def generic_rank(M, trials=5, bound=1000, seed=0, rng=None):
    """
    Largest rank of M at `trials` random integer forms in [−bound, bound].

    Args:
        M (VectorMatrix): Matrix of linear forms.
        trials (int): Number of evaluations, at least 1.
        bound (int): Coordinate bound, at least 1.
        seed (int): Seed used when rng is None.
        rng (numpy.random.Generator or None): Shared generator; consumed in order.

    Returns:
        int: A lower bound for the generic rank, equal to it with high
        probability.
    """
    if trials < 1 or bound < 1:
        raise InputError("trials and bound must be at least 1")
    if M.is_zero() or M.dim == 0:
        return 0
    rng = rng if rng is not None else np.random.default_rng(seed)
    full = min(M.rows, M.cols)
    best = 0
    for _ in range(trials):
        phi = [int(v) for v in rng.integers(-bound, bound, size=M.dim, endpoint=True)]
        best = max(best, rank(M.evaluate(phi)))
        if best == full:
            break
    return best


def index_of(q, trials=5, bound=1000, seed=0, rng=None):
    """ind q = dim q − generic rank of K(q)."""
    elems = _as_elements(q)
    if not elems:
        return 0
    space = q if isinstance(q, Subspace) else Subspace.span(elems[0].parent, elems)
    return space.dim - generic_rank(kirillov(space, space), trials, bound, seed, rng)


def index_rep(q, V, trials=5, bound=1000, seed=0, rng=None):
    """
    ind(q, V) = dim V − generic rank of K(q, V).

    Raises:
        InputError: If [q, V] is not contained in V.
    """
    if V.dim == 0:
        return 0
    return V.dim - generic_rank(kirillov(q, V), trials, bound, seed, rng)


def adapted_order(t):
    """
    Basis of g^e with z first (by ascending weight), then the rest by weight.

    Returns:
        tuple: (list of Element, m) with m = dim z.
    """
    zpart, rest = [], []
    for _weight, zvecs, ext in t.adapted_basis:
        zpart += zvecs
        rest += ext
    return zpart + rest, len(zpart)


def de_matrix(t):
    """
    The [D; E] block: rows the adapted basis of g^e, columns the z part,
    entry (i, j) = [[f, e_j], e_i] in g^e coordinates.

    Raises:
        PropertyViolation: If an entry leaves g^e, or if
            [[f, e_j], e_i] != [[f, e_i], e_j] for some i ≤ m.
    """
    basis, m = adapted_order(t)
    gxi = t.centralizer
    f = t.f
    f_cols = [bracket(f, basis[j]) for j in range(m)]
    values = {}
    entries = {}
    for i, e_i in enumerate(basis):
        for j in range(m):
            value = bracket(f_cols[j], e_i)
            values[(i, j)] = value
            if value.is_zero():
                continue
            try:
                coords = gxi.coordinates(value)
            except InputError as e:
                raise PropertyViolation(f"[[f, e_{j + 1}], e_{i + 1}] is not in g^e") from e
            entries[(i, j)] = {k: c for k, c in enumerate(coords) if c}
    for i in range(m):
        for j in range(i + 1, m):
            if values[(i, j)] != values[(j, i)]:
                raise PropertyViolation(f"[[f, e_{j + 1}], e_{i + 1}] != [[f, e_{i + 1}], e_{j + 1}]")
    return VectorMatrix(len(basis), m, gxi.dim, entries, gxi)


def form_poly(coeffs, gens):
    """Linear Poly Σ c_k gens[k] from a sparse {k: c} or a sequence."""
    if isinstance(coeffs, dict):
        vec = [QQ(0)] * len(gens)
        for k, c in coeffs.items():
            vec[k] = rational(c)
        coeffs = vec
    return linear_poly(coeffs, gens)


def symbolic_determinant(M):
    """
    det M as a Poly in variables x1..x_dim.

    Returns:
        tuple: (Poly, gens).
    """
    if M.rows != M.cols:
        raise InputError(f"determinant of a non-square {M.rows}x{M.cols} matrix")
    gens = symbols(f"x1:{max(M.dim, 1) + 1}")
    if M.rows == 0:
        return Poly(1, *gens, domain=QQ), gens
    rows = [[form_poly(M.entry(i, j), gens) for j in range(M.cols)] for i in range(M.rows)]
    return poly_det(rows), gens


@dataclass
class TheoremReport:
    """Indices and rank checks for one sl2-triple."""

    ind_gxi: int
    ind_n: int
    ind_n_gxi: int
    ind_n_z: int
    target: int
    rank_C: int
    de_rank: int
    prop4_ok: bool
    block_ok: bool
    index_bound_ok: bool
    rank_chain_ok: bool
    gxi_index_ok: bool
    ind_n_ok: bool
    ind_n_gxi_ok: bool
    equivalence_ok: bool
    ok: bool

    def to_record(self):
        return asdict(self)


def restrict_form(phi, space):
    """Values of a form on the ambient algebra at the basis of `space`."""
    return [sum((c * phi[a] for a, c in enumerate(b.coeffs) if c), QQ(0)) for b in _as_elements(space)]


def verify_theorems(t, trials=5, bound=1000, seed=0, rng=None):
    """
    ind n(g^e) and ind(n(g^e), g^e) against rg g − dim z(g^e), with the
    [D; E] rank test and the inequalities relating them.

    Each trial draws one integer form φ on g and restricts it to n(g^e),
    g^e and z(g^e), so every rank of the trial is taken at the same point.
    The trial with the largest total rank is kept; all checks compare
    ranks from that trial only.

    Raises:
        InputError: If the rank of the algebra is unknown, or trials or
            bound is below 1.
    """
    g = t.algebra
    if g.rank is None:
        raise InputError(f"rank of {g.name} is unknown")
    if trials < 1 or bound < 1:
        raise InputError("trials and bound must be at least 1")
    rng = rng if rng is not None else np.random.default_rng(seed)
    gxi, z, n = t.centralizer, t.center, t.normalizer
    m = z.dim

    basis, _ = adapted_order(t)
    K = kirillov(basis, basis, target=gxi)
    block_ok = all(i >= m and j >= m for (i, j) in K.entries)
    C = K.extract(range(m, gxi.dim), range(m, gxi.dim))
    K_n = kirillov(n, n)
    K_n_gxi = kirillov(n, gxi)
    K_n_z = kirillov(n, z) if m else None
    DE = de_matrix(t)

    def at(M, psi):
        return rank(M.evaluate(psi)) if M.dim and not M.is_zero() else 0

    best = None
    for _ in range(trials):
        phi = [int(v) for v in rng.integers(-bound, bound, size=g.dim, endpoint=True)]
        on_n, on_gxi = restrict_form(phi, n), restrict_form(phi, gxi)
        ranks = (
            at(K, on_gxi),
            at(K_n, on_n),
            at(K_n_gxi, on_gxi),
            at(K_n_z, restrict_form(phi, z)) if K_n_z is not None else 0,
            at(C, on_gxi),
            at(DE, on_gxi),
        )
        if best is None or sum(ranks) > sum(best):
            best = ranks
    rank_gxi, rank_n, rank_n_gxi, rank_n_z, rank_C, de_rank = best

    ind_gxi = gxi.dim - rank_gxi
    ind_n = n.dim - rank_n
    ind_n_gxi = gxi.dim - rank_n_gxi
    ind_n_z = m - rank_n_z
    target = g.rank - m
    prop4_ok = de_rank == m
    ind_n_gxi_ok = ind_n_gxi == target
    index_bound_ok = ind_gxi + ind_n <= (n.dim - gxi.dim) + 2 * ind_n_gxi
    rank_chain_ok = (block_ok and rank_n_gxi <= rank_C + m
                     and rank_n <= rank_C + 2 * m)
    report = TheoremReport(
        ind_gxi=ind_gxi,
        ind_n=ind_n,
        ind_n_gxi=ind_n_gxi,
        ind_n_z=ind_n_z,
        target=target,
        rank_C=rank_C,
        de_rank=de_rank,
        prop4_ok=prop4_ok,
        block_ok=block_ok,
        index_bound_ok=index_bound_ok,
        rank_chain_ok=rank_chain_ok,
        gxi_index_ok=ind_gxi == g.rank,
        ind_n_ok=ind_n == target,
        ind_n_gxi_ok=ind_n_gxi_ok,
        equivalence_ok=prop4_ok == ind_n_gxi_ok,
        ok=False,
    )
    report.ok = all([report.gxi_index_ok, report.ind_n_ok, report.ind_n_gxi_ok,
                     report.equivalence_ok, report.index_bound_ok, report.rank_chain_ok])
    return report
