"""
exactla.py

Exact linear algebra over the rationals. Matrices wrap sympy's DomainMatrix
over QQ in sparse format; scalars are QQ elements (gmpy2 mpq when gmpy2 is
installed). Echelon forms are fully reduced with pivots normalized to 1, so
every basis this module hands out is reproducible.

Also home to the binary-form helpers used by the parametric rank checker:
gcd of homogeneous forms, maximal minors of a matrix of linear forms,
stripping known factors and finding rational projective roots.
"""
import itertools
from functools import reduce

from sympy import QQ, Poly, Symbol
from sympy.polys.matrices import DomainMatrix

from .errors import InputError, UnsupportedError

MAX_PARAMS = 4


def rational(value):
    """
    Parse an int, a QQ element or a string "a" / "a/b" into QQ.

    Raises:
        InputError: If the text is not a rational number.
    """
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                if int(den) == 0:
                    raise InputError(f"zero denominator in {value!r}")
                return QQ(int(num), int(den))
            return QQ(int(text))
        except ValueError as e:
            raise InputError(f"not a rational number: {value!r}") from e
    if isinstance(value, bool):
        raise InputError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return QQ(value)
    try:
        return QQ.convert(value)
    except Exception as e:
        raise InputError(f"not a rational number: {value!r}") from e


def is_integral(q):
    return QQ.denom(q) == 1


def to_int(q):
    """QQ -> int; raises InputError for non-integers."""
    if not is_integral(q):
        raise InputError(f"{q} is not an integer")
    return int(QQ.numer(q))


class QMatrix:
    """Immutable rational matrix backed by a sparse DomainMatrix over QQ."""

    __slots__ = ("dm",)

    def __init__(self, dm):
        if dm.domain != QQ:
            dm = dm.convert_to(QQ)
        object.__setattr__(self, "dm", dm.to_sparse())

    def __setattr__(self, name, value):
        raise AttributeError("QMatrix is immutable")

    # construction

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise InputError("column count needed for a matrix with no rows")
            ncols = len(rows[0])
        dod = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise InputError(f"row {i} has {len(row)} entries, expected {ncols}")
            entries = {j: rational(v) for j, v in enumerate(row) if v}
            entries = {j: v for j, v in entries.items() if v}
            if entries:
                dod[i] = entries
        return cls(DomainMatrix.from_dod(dod, (len(rows), ncols), QQ))

    @classmethod
    def from_dod(cls, dod, shape):
        clean = {}
        for i, row in dod.items():
            entries = {j: QQ.convert(v) for j, v in row.items() if v}
            if entries:
                clean[i] = entries
        return cls(DomainMatrix.from_dod(clean, shape, QQ))

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(DomainMatrix.from_dod({}, (nrows, ncols), QQ))

    @classmethod
    def identity(cls, n):
        return cls.from_dod({i: {i: QQ(1)} for i in range(n)}, (n, n))

    @classmethod
    def hstack(cls, *mats):
        nrows = mats[0].rows
        dod, offset = {}, 0
        for m in mats:
            if m.rows != nrows:
                raise InputError("hstack needs equal row counts")
            for i, row in m.to_dod().items():
                dod.setdefault(i, {}).update({offset + j: v for j, v in row.items()})
            offset += m.cols
        return cls.from_dod(dod, (nrows, offset))

    @classmethod
    def vstack(cls, *mats):
        ncols = mats[0].cols
        dod, offset = {}, 0
        for m in mats:
            if m.cols != ncols:
                raise InputError("vstack needs equal column counts")
            for i, row in m.to_dod().items():
                dod[offset + i] = dict(row)
            offset += m.rows
        return cls.from_dod(dod, (offset, ncols))

    # access

    @property
    def shape(self):
        return self.dm.shape

    @property
    def rows(self):
        return self.dm.shape[0]

    @property
    def cols(self):
        return self.dm.shape[1]

    def to_dod(self):
        return self.dm.to_dod()

    def to_rows(self):
        dod = self.to_dod()
        return [[dod.get(i, {}).get(j, QQ(0)) for j in range(self.cols)] for i in range(self.rows)]

    def row(self, i):
        entries = self.to_dod().get(i, {})
        return [entries.get(j, QQ(0)) for j in range(self.cols)]

    def column(self, j):
        return [row.get(j, QQ(0)) for row in (self.to_dod().get(i, {}) for i in range(self.rows))]

    def entry(self, i, j):
        return self.to_dod().get(i, {}).get(j, QQ(0))

    def extract(self, rows, cols):
        rows, cols = list(rows), list(cols)
        return QMatrix(self.dm.extract(rows, cols))

    # arithmetic

    def transpose(self):
        return QMatrix(self.dm.transpose())

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise InputError(f"cannot multiply {self.shape} by {other.shape}")
        return QMatrix(self.dm.matmul(other.dm))

    def __add__(self, other):
        if self.shape != other.shape:
            raise InputError(f"cannot add {self.shape} and {other.shape}")
        return QMatrix(self.dm.add(other.dm))

    def __sub__(self, other):
        if self.shape != other.shape:
            raise InputError(f"cannot subtract {other.shape} from {self.shape}")
        return QMatrix(self.dm.sub(other.dm))

    def __neg__(self):
        return QMatrix(self.dm.neg())

    def scale(self, c):
        return QMatrix(self.dm.scalarmul(rational(c)))

    def apply(self, vector):
        """M·v for a plain sequence v; returns a list."""
        vector = list(vector)
        if len(vector) != self.cols:
            raise InputError(f"vector of length {len(vector)} for {self.shape} matrix")
        out = [QQ(0)] * self.rows
        for i, row in self.to_dod().items():
            acc = QQ(0)
            for j, v in row.items():
                if vector[j]:
                    acc += v * vector[j]
            out[i] = acc
        return out

    def trace(self):
        dod = self.to_dod()
        return sum((dod.get(i, {}).get(i, QQ(0)) for i in range(min(self.shape))), QQ(0))

    def det(self):
        if self.rows != self.cols:
            raise InputError(f"determinant of non-square {self.shape} matrix")
        if self.rows == 0:
            return QQ(1)
        return self.dm.det()

    def charpoly(self):
        """Coefficients of det(tI − M), leading coefficient first."""
        if self.rows != self.cols:
            raise InputError(f"characteristic polynomial of non-square {self.shape} matrix")
        if self.rows == 0:
            return [QQ(1)]
        return list(self.dm.charpoly())

    def is_zero(self):
        return not any(self.to_dod().values())

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and _strip(self.to_dod()) == _strip(other.to_dod())

    def __hash__(self):
        return hash((self.shape, tuple(sorted((i, tuple(sorted(r.items()))) for i, r in _strip(self.to_dod()).items()))))

    def __repr__(self):
        return f"QMatrix({[[str(v) for v in r] for r in self.to_rows()]})"


def _strip(dod):
    return {i: {j: v for j, v in row.items() if v} for i, row in dod.items() if any(row.values())}


def rref(M):
    """
    Reduced row echelon form.

    Args:
        M (QMatrix): Input matrix.

    Returns:
        tuple: (R, pivots) with R the same shape as M and pivots the list of
        pivot column indices, strictly increasing.
    """
    if M.rows == 0 or M.cols == 0:
        return M, []
    R, pivots = M.dm.rref()
    return QMatrix(R), list(pivots)


def rank(M):
    return len(rref(M)[1])


def row_basis(M):
    """Nonzero rows of rref(M) as a QMatrix, with their pivot columns."""
    R, pivots = rref(M)
    return R.extract(range(len(pivots)), range(M.cols)), pivots


def kernel_basis(M):
    """
    Basis of {v : M·v = 0}, one vector per row, in reduced echelon form.

    The row count is always M.cols − rank(M).
    """
    n = M.cols
    if n == 0:
        return QMatrix.zeros(0, 0)
    R, pivots = rref(M)
    free = [j for j in range(n) if j not in set(pivots)]
    if not free:
        return QMatrix.zeros(0, n)
    dod = R.to_dod()
    vectors = {}
    for k, f in enumerate(free):
        vec = {f: QQ(1)}
        for r, p in enumerate(pivots):
            v = dod.get(r, {}).get(f)
            if v:
                vec[p] = -v
        vectors[k] = vec
    basis, _ = row_basis(QMatrix.from_dod(vectors, (len(free), n)))
    return basis


def solve(M, b):
    """
    One solution of M·x = b, or None when the system is inconsistent.

    The returned x is the particular solution with every free variable zero.

    Raises:
        InputError: If len(b) != M.rows.
    """
    b = [rational(v) for v in b]
    if len(b) != M.rows:
        raise InputError(f"right-hand side of length {len(b)} for {M.shape} matrix")
    n = M.cols
    if M.rows == 0:
        return [QQ(0)] * n
    aug = QMatrix.hstack(M, QMatrix.from_rows([[v] for v in b], 1))
    R, pivots = rref(aug)
    if pivots and pivots[-1] == n:
        return None
    x = [QQ(0)] * n
    dod = R.to_dod()
    for r, p in enumerate(pivots):
        x[p] = dod.get(r, {}).get(n, QQ(0))
    return x


def nilpotency_index(M, limit=None):
    """
    Smallest power 2^k with M^(2^k) = 0, by repeated squaring.

    Returns None when M^(2^k) is still nonzero once 2^k reaches `limit`
    (default: the size of M), i.e. when M is not nilpotent.
    """
    if M.rows != M.cols:
        raise InputError(f"nilpotency of non-square {M.shape} matrix")
    limit = M.rows if limit is None else limit
    P, power = M, 1
    while True:
        if P.is_zero():
            return power
        if power >= limit:
            return None
        P, power = P @ P, power * 2


class Frame:
    """
    A basis that need not be echelonized, with fast coordinates.

    The rows of `basis` are independent vectors; coordinates of a vector in
    their span are read from its values at the pivot columns of the basis
    through a precomputed inverse.
    """

    def __init__(self, basis):
        self.basis = basis
        _, pivots = rref(basis)
        if len(pivots) != basis.rows:
            raise InputError("frame vectors are linearly dependent")
        self.pivots = pivots
        square = basis.extract(range(basis.rows), pivots) if pivots else QMatrix.zeros(0, 0)
        self._inverse = QMatrix(square.dm.inv()) if pivots else square

    @property
    def dim(self):
        return self.basis.rows

    def coordinates(self, vector, check=True):
        """
        Coordinates c with Σ c_k basis_k = vector.

        Raises:
            InputError: If check is on and the vector is not in the span.
        """
        vector = list(vector)
        if not self.pivots:
            if check and any(vector):
                raise InputError("vector is not in the span of the frame")
            return []
        picked = [vector[p] for p in self.pivots]
        coords = self._inverse.transpose().apply(picked)
        if check:
            rebuilt = self.combine(coords)
            if any(a != b for a, b in zip(rebuilt, vector)):
                raise InputError("vector is not in the span of the frame")
        return coords

    def combine(self, coords):
        out = [QQ(0)] * self.basis.cols
        dod = self.basis.to_dod()
        for k, c in enumerate(coords):
            if c:
                for j, v in dod.get(k, {}).items():
                    out[j] += c * v
        return out


# binary forms and parametric minors

def _check_binary(form):
    if len(form.gens) != 2:
        raise InputError(f"expected a form in 2 variables, got {form.gens}")
    if not form.is_zero and not form.is_homogeneous:
        raise InputError(f"{form.as_expr()} is not homogeneous")


def poly_gcd_binary(forms):
    """
    gcd of homogeneous forms in two variables, up to a scalar.

    The gcd is constant exactly when the forms share no projective root over
    the algebraic closure.

    Raises:
        InputError: If every form is zero.
    """
    forms = list(forms)
    for f in forms:
        _check_binary(f)
    nonzero = [f for f in forms if not f.is_zero]
    if not nonzero:
        raise InputError("gcd of zero forms is undefined")
    g = reduce(lambda a, b: a.gcd(b), nonzero)
    return g.monic() if g.total_degree() > 0 else Poly(1, *g.gens, domain=QQ)


binary_forms_gcd = poly_gcd_binary


def linear_poly(coeffs, gens):
    """The linear form Σ c_i g_i as a Poly over QQ."""
    n = len(gens)
    rep = {}
    for i, c in enumerate(coeffs):
        c = rational(c)
        if c:
            rep[tuple(1 if k == i else 0 for k in range(n))] = c
    return Poly.from_dict(rep, *gens, domain=QQ)


def poly_det(rows):
    """Determinant of a square matrix of Polys by Laplace expansion on row 0."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j, a in enumerate(rows[0]):
        if a.is_zero:
            continue
        minor = poly_det([r[:j] + r[j + 1:] for r in rows[1:]])
        term = a * minor if j % 2 == 0 else -(a * minor)
        total = term if total is None else total + term
    return total if total is not None else rows[0][0] * 0


def maximal_minors(entries, gens):
    """
    Yield the r×r minors of an r×c matrix of linear forms, as Polys.

    Args:
        entries (list of list of tuple): entries[p][q] is the coefficient
            vector of a linear form in `gens`.
        gens (tuple of Symbol): Variables of the forms.
    """
    r = len(entries)
    c = len(entries[0]) if entries else 0
    polys = [[linear_poly(e, gens) for e in row] for row in entries]
    for cols in itertools.combinations(range(c), r):
        yield poly_det([[row[q] for q in cols] for row in polys])


def strip_factors(g, forms):
    """Remove from g every factor it shares with any of `forms`."""
    for f in forms:
        if f.is_zero:
            continue
        while g.total_degree() > 0:
            common = g.gcd(f)
            if common.total_degree() == 0:
                break
            g = g.exquo(common)
    return g


def rational_root(form):
    """
    A rational projective root (s, t) of a binary form, or None.

    Linear factors over QQ are the only source of rational roots.
    """
    _check_binary(form)
    if form.is_zero:
        return (QQ(1), QQ(0))
    _, factors = form.factor_list()
    s, t = form.gens
    for factor, _mult in sorted(factors, key=lambda fm: (fm[0].total_degree(), str(fm[0].as_expr()))):
        if factor.total_degree() != 1:
            continue
        a = factor.coeff_monomial(s)
        b = factor.coeff_monomial(t)
        # a·s + b·t = 0 at (−b, a)
        return (QQ.convert(-b), QQ.convert(a))
    return None


def param_symbols(count, names=None):
    """Symbols for up to four parameters."""
    if count > MAX_PARAMS:
        raise UnsupportedError(f"at most {MAX_PARAMS} parameters are supported, got {count}")
    names = names or ("alpha", "beta", "gamma", "delta")[:count]
    return tuple(Symbol(n) for n in names)
