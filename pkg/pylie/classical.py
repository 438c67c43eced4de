"""
classical.py

sl_n, so_n and sp_n as matrix Lie algebras over QQ, nilpotents indexed by
partitions, and the power-span z′ = span{ξ^k} with its D-matrix.

The orthogonal and symplectic algebras are the isometry algebras of an
orthogonal sum of per-block forms. A Jordan block of size p preserves
F_p with (F_p)_{i, p+1-i} = (−1)^(i−1) (symmetric for odd p, skew for even
p); a pair of equal blocks carries [[0, F_p], [±F_p^T, 0]]. Over QQ the
identity form has no nonzero nilpotent isometries.
"""
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import QQ

from .errors import InputError, PropertyViolation
from .exactla import QMatrix, Frame, kernel_basis, rank, rational, to_int
from .liecore import LieAlgebra, Subspace, bracket, center_of, ad_matrix
from .slice import Sl2Triple, jacobson_morozov
from .index import VectorMatrix, symbolic_determinant, form_poly, generic_rank, verify_theorems
from .propp import direct_witness

FAMILIES = ("sl", "so", "sp")


def valid_partition(family, parts):
    """so: even parts have even multiplicity; sp: odd parts do."""
    if family not in FAMILIES:
        return False
    parts = list(parts)
    if not parts or any(not isinstance(p, int) or p < 1 for p in parts):
        return False
    if family == "sl":
        return True
    bad = 0 if family == "so" else 1
    return all(parts.count(p) % 2 == 0 for p in set(parts) if p % 2 == bad)


def distinguished_partition(family, parts):
    """so: distinct odd parts; sp: distinct even parts; sl: a single part."""
    parts = list(parts)
    if not valid_partition(family, parts):
        return False
    if family == "sl":
        return len(parts) == 1
    parity = 1 if family == "so" else 0
    return len(set(parts)) == len(parts) and all(p % 2 == parity for p in parts)


def _block_triple(p):
    """Standard sl2 triple (X, H, Y) on the irreducible module of dimension p."""
    X = {i: {i + 1: QQ(1)} for i in range(p - 1)}
    H = {i: {i: QQ(p - 1 - 2 * i)} for i in range(p) if p - 1 - 2 * i}
    Y = {i + 1: {i: QQ((i + 1) * (p - i - 1))} for i in range(p - 1)}
    return X, H, Y


def _block_form(p):
    """(F_p)_{i, p+1-i} = (−1)^(i−1), 1-based."""
    return {i: {p - 1 - i: QQ((-1) ** i)} for i in range(p)}


def _place(target, block, offset):
    for i, row in block.items():
        for j, v in row.items():
            target.setdefault(offset + i, {})[offset + j] = v


def _place_at(target, block, row_off, col_off, sign=1):
    for i, row in block.items():
        for j, v in row.items():
            target.setdefault(row_off + i, {})[col_off + j] = sign * v


def _transpose_dod(block):
    out = {}
    for i, row in block.items():
        for j, v in row.items():
            out.setdefault(j, {})[i] = v
    return out


@dataclass(frozen=True)
class ClassicalRealization:
    """A classical Lie algebra as matrices preserving `form` (None for sl)."""

    family: str
    n: int
    form: object
    algebra: LieAlgebra

    def to_element(self, m):
        return self.algebra.from_matrix(m)

    def to_matrix(self, x):
        return self.algebra.to_matrix(x)


def _sl_basis(n):
    mats, labels = [], []
    for i in range(n):
        for j in range(n):
            if i != j:
                mats.append(QMatrix.from_dod({i: {j: 1}}, (n, n)))
                labels.append(f"E{i + 1}_{j + 1}")
    for i in range(n - 1):
        mats.append(QMatrix.from_dod({i: {i: 1}, i + 1: {i + 1: -1}}, (n, n)))
        labels.append(f"H{i + 1}")
    return mats, labels


def _isometry_basis(B):
    """Basis of {X : X^T B + B X = 0} as matrices, echelon on vec(X)."""
    n = B.rows
    Bd = B.to_dod()
    # (X^T B + B X)_{ab} = Σ_k X_{ka} B_{kb} + Σ_k B_{ak} X_{kb}, unknown X_{rc} at r*n + c
    dod = {}
    for a in range(n):
        for b in range(n):
            row = dod.setdefault(a * n + b, {})
            for k, brow in Bd.items():
                v = brow.get(b)
                if v:
                    row[k * n + a] = row.get(k * n + a, QQ(0)) + v
            for k, v in Bd.get(a, {}).items():
                row[k * n + b] = row.get(k * n + b, QQ(0)) + v
    ker = kernel_basis(QMatrix.from_dod(dod, (n * n, n * n)))
    mats = []
    for vec in ker.to_rows():
        mats.append(QMatrix.from_dod({r: {c: vec[r * n + c] for c in range(n) if vec[r * n + c]} for r in range(n)}, (n, n)))
    return mats


def _layout(family, partition):
    """Blocks as (offset, size, paired) and the global form dod."""
    parts = sorted(partition, reverse=True)
    blocks, form, offset = [], {}, 0
    remaining = list(parts)
    while remaining:
        p = remaining.pop(0)
        paired = family == "so" and p % 2 == 0 or family == "sp" and p % 2 == 1
        if paired:
            remaining.remove(p)
            F = _block_form(p)
            sign = 1 if family == "so" else -1
            _place_at(form, F, offset, offset + p)
            _place_at(form, _transpose_dod(F), offset + p, offset, sign)
            blocks.append((offset, p, True))
            offset += 2 * p
        else:
            if family != "sl":
                _place(form, _block_form(p), offset)
            blocks.append((offset, p, False))
            offset += p
    return blocks, form, offset


@lru_cache(maxsize=None)
def realization(family, partition):
    """
    The Lie algebra of `family` on the space of the partition's blocks.

    For sl the form is None and the algebra is sl_n.
    """
    partition = tuple(partition)
    if not valid_partition(family, partition):
        raise InputError(f"{list(partition)} is not a valid {family} partition")
    blocks, form, n = _layout(family, partition)
    if family == "sl":
        mats, labels = _sl_basis(n)
        alg_rank, B = n - 1, None
    else:
        B = QMatrix.from_dod(form, (n, n))
        mats = _isometry_basis(B)
        labels = [f"b{i + 1}" for i in range(len(mats))]
        alg_rank = n // 2
    algebra = LieAlgebra.from_matrices(mats, labels, name=f"{family}{n}", rank=alg_rank)
    for m in mats:
        if B is not None and not (m.transpose() @ B + B @ m).is_zero():
            raise PropertyViolation(f"basis matrix of {algebra.name} does not preserve the form")
    return ClassicalRealization(family, n, B, algebra)


@dataclass(frozen=True)
class PartitionNilpotent:
    """ξ of Jordan type `partition` with its block-diagonal sl2-triple."""

    family: str
    partition: tuple
    realization: ClassicalRealization
    blocks: tuple
    xi: QMatrix
    rho: QMatrix
    eta: QMatrix
    triple: Sl2Triple

    @property
    def algebra(self):
        return self.realization.algebra

    @property
    def degree(self):
        """Degree d of the minimal polynomial of ξ."""
        return max(self.partition)


def build_partition_nilpotent(family, partition):
    """
    Nilpotent of Jordan type `partition` in the `family` realization.

    Raises:
        InputError: If the partition is not valid for the family.
    """
    partition = tuple(sorted(partition, reverse=True))
    real = realization(family, partition)
    blocks, _, n = _layout(family, partition)
    X, H, Y = {}, {}, {}
    for offset, p, paired in blocks:
        bx, bh, by = _block_triple(p)
        for copy in ((0, 1) if paired else (0,)):
            _place(X, bx, offset + copy * p)
            _place(H, bh, offset + copy * p)
            _place(Y, by, offset + copy * p)
    xi = QMatrix.from_dod(X, (n, n))
    rho = QMatrix.from_dod(H, (n, n))
    eta = QMatrix.from_dod(Y, (n, n))
    triple = Sl2Triple(real.to_element(xi), real.to_element(rho), real.to_element(eta))

    # Jordan type: rank ξ^k = Σ max(p − k, 0)
    power = xi
    for k in range(1, max(partition) + 1):
        if rank(power) != sum(max(p - k, 0) for p in partition):
            raise PropertyViolation(f"ξ does not have Jordan type {list(partition)}")
        power = power @ xi
    return PartitionNilpotent(family, partition, real, tuple(blocks), xi, rho, eta, triple)


def xi_power(p, k):
    out = QMatrix.identity(p.xi.rows)
    for _ in range(k):
        out = out @ p.xi
    return out


def zprime_exponents(p):
    """Exponents k with ξ^k spanning z′: 1..d−1 (sl) or odd k ≤ d−1."""
    d = p.degree
    if p.family == "sl":
        return list(range(1, d))
    return [2 * i - 1 for i in range(1, d // 2 + 1)]


def zprime_basis(p):
    return [p.realization.to_element(xi_power(p, k)) for k in zprime_exponents(p)]


def zprime(p):
    """z′: the span of the powers of ξ lying in g."""
    return Subspace.span(p.algebra, zprime_basis(p))


def dmatrix(p):
    """
    D-matrix on z′: entry (i, j) = [[η, e_j], e_i] in the power basis.

    Raises:
        PropertyViolation: If an entry leaves z′.
    """
    basis = zprime_basis(p)
    eta = p.triple.f
    m = len(basis)
    if m == 0:
        return VectorMatrix(0, 0, 0, {})
    frame = Frame(QMatrix.from_rows([b.coeffs for b in basis], p.algebra.dim))
    entries = {}
    for i in range(m):
        for j in range(m):
            value = bracket(bracket(eta, basis[j]), basis[i])
            if value.is_zero():
                continue
            try:
                coords = frame.coordinates(value.coeffs)
            except InputError as e:
                raise PropertyViolation(f"D-matrix entry ({i + 1}, {j + 1}) leaves z'") from e
            entries[(i, j)] = {k: c for k, c in enumerate(coords) if c}
    return VectorMatrix(m, m, m, entries, labels=[f"xi^{k}" for k in zprime_exponents(p)])


def dmatrix_closed_form(p):
    """Expected D-matrix entries {(i, j): (power index, coefficient)}, 0-based."""
    d, m = p.degree, len(zprime_exponents(p))
    out = {}
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if p.family == "sl":
                if i + j <= d:
                    out[(i - 1, j - 1)] = (i + j - 2, QQ(-2 * i * j))
            elif i + j <= m + 1:
                out[(i - 1, j - 1)] = (i + j - 2, QQ(-2 * (2 * i - 1) * (2 * j - 1)))
    return out


def dmatrix_matches_closed_form(p):
    """Entrywise comparison of dmatrix(p) with dmatrix_closed_form(p)."""
    expected = {ij: {k: c} for ij, (k, c) in dmatrix_closed_form(p).items()}
    return dmatrix(p).entries == expected


def determinant_constant(p):
    """|det D| / <φ, top power>^m: 2^(d−1)((d−1)!)^2 or 2^r((2r−1)!!)^2."""
    m = len(zprime_exponents(p))
    if p.family == "sl":
        return 2 ** m * math.factorial(m) ** 2
    return 2 ** m * math.prod(range(1, 2 * m, 2)) ** 2


def d_determinant_check(p, forms):
    """
    Compare det D with ±c·<φ, top power>^m, symbolically and at `forms`.

    Args:
        p (PartitionNilpotent): z′ must be nonzero.
        forms (list of sequence): Linear forms on z′ as coefficient vectors.

    Returns:
        bool: True when the symbolic determinant is ±c·φ_top^m and every
        evaluation agrees with it.
    """
    D = dmatrix(p)
    m = D.rows
    if m == 0:
        return True
    det, gens = symbolic_determinant(D)
    c = determinant_constant(p)
    target = form_poly({m - 1: QQ(1)}, gens) ** m * c
    if det != target and det != -target:
        return False
    for phi in forms:
        phi = [rational(v) for v in phi]
        value = D.evaluate(phi).det()
        if abs(value) != c * abs(phi[-1]) ** m:
            return False
    return True


def power_relations(p):
    """
    Matrix identities [ρ, ξ^i] = 2i ξ^i, [ξ^k, η] = Σ ξ^a ρ ξ^b (a+b = k−1),
    and [[ξ^k, η], ξ^i] = 2ki ξ^(k+i−1), for all k, i up to d.
    """
    d = p.degree
    xi, rho, eta = p.xi, p.rho, p.eta
    powers = [xi_power(p, k) for k in range(d + 1)]

    def comm(a, b):
        return a @ b - b @ a

    for i in range(1, d + 1):
        if comm(rho, powers[i]) != powers[i].scale(2 * i):
            return False
    for k in range(1, d + 1):
        expected = QMatrix.zeros(xi.rows, xi.rows)
        for a in range(k):
            expected = expected + powers[a] @ rho @ powers[k - 1 - a]
        if comm(powers[k], eta) != expected:
            return False
    for k in range(1, d + 1):
        left = comm(powers[k], eta)
        for i in range(1, d + 1):
            if k + i - 1 > d:
                continue
            if comm(left, powers[i]) != powers[k + i - 1].scale(2 * k * i):
                return False
    return True


def _two_part(p):
    parts = p.partition
    if p.family != "so" or len(parts) != 2 or parts[0] == parts[1] or any(q % 2 == 0 for q in parts):
        raise InputError("needs an so partition [2s+1, 2t+1] with s > t")
    return (parts[0] - 1) // 2, (parts[1] - 1) // 2


def special_center_element(p):
    """
    The central element w outside z′ for an so partition [2s+1, 2t+1].

    Returns:
        tuple: (w, A, lam) with A the rank-one block of w and lam its ad-ρ
        weight.

    Raises:
        InputError: For any other family or partition shape.
        PropertyViolation: If w fails to be a central weight vector outside z′.
    """
    s, t = _two_part(p)
    n1, n2 = 2 * s + 1, 2 * t + 1
    X1, _, _ = _block_triple(n1)
    X2, _, _ = _block_triple(n2)
    # unknown A_{rc} at r*n2 + c; X1·A = 0 and A·X2 = 0
    dod = {}
    row = 0
    for r in range(n1):
        for c in range(n2):
            eq = {}
            for k, v in X1.get(r, {}).items():
                eq[k * n2 + c] = v
            dod[row] = eq
            row += 1
    for r in range(n1):
        for c in range(n2):
            eq = {}
            for k in range(n2):
                v = X2.get(k, {}).get(c)
                if v:
                    eq[r * n2 + k] = v
            dod[row] = eq
            row += 1
    ker = kernel_basis(QMatrix.from_dod(dod, (row, n1 * n2)))
    if ker.rows == 0:
        raise PropertyViolation("no block A with X1·A = 0 = A·X2")
    vec = ker.row(0)
    A = {r: {c: vec[r * n2 + c] for c in range(n2) if vec[r * n2 + c]} for r in range(n1)}
    A_mat = QMatrix.from_dod(A, (n1, n2))
    if rank(A_mat) != 1:
        raise PropertyViolation("A is not of rank one")
    F1, F2 = _block_form(n1), _block_form(n2)
    F1m, F2m = QMatrix.from_dod(F1, (n1, n1)), QMatrix.from_dod(F2, (n2, n2))
    C = -(F2m @ A_mat.transpose() @ F1m)
    W = {}
    _place_at(W, A_mat.to_dod(), 0, n1)
    _place_at(W, C.to_dod(), n1, 0)
    n = n1 + n2
    w = p.realization.to_element(QMatrix.from_dod(W, (n, n)))

    t_ = p.triple
    if not center_of(t_.centralizer).contains(w):
        raise PropertyViolation("w is not central in g^xi")
    hw = bracket(t_.h, w)
    support = w.support()
    lam = hw.coeffs[support[0]] / w.coeffs[support[0]]
    if hw != w * lam:
        raise PropertyViolation("w is not an ad-rho eigenvector")
    if zprime(p).contains(w):
        raise PropertyViolation("w lies in z'")
    return w, A_mat, lam


def xi2(p):
    """ξ restricted to the second block, as an element."""
    s, t = _two_part(p)
    n1, n2 = 2 * s + 1, 2 * t + 1
    X2, _, _ = _block_triple(n2)
    dod = {}
    _place(dod, X2, n1)
    return p.realization.to_element(QMatrix.from_dod(dod, (n1 + n2, n1 + n2)))


def verify_crochet(p, w):
    """
    Bracket identities of w against powers of ξ and against ξ₂.

    Checks [[η, w], ξ] = −λw, [[η, w], ξ^(2i−1)] = 0 for i = 2..s,
    x := [[η, w], ξ₂] nonzero and in g^ξ, and [[η, ξ^(2s−1)], ξ₂] = 0.

    Returns:
        Element: x.

    Raises:
        PropertyViolation: On the first failing identity.
    """
    s, _ = _two_part(p)
    t = p.triple
    eta = t.f
    lam_w = bracket(t.h, w)
    eta_w = bracket(eta, w)
    if bracket(eta_w, t.e) != -lam_w:
        raise PropertyViolation("[[eta, w], xi] != -lambda w")
    for i in range(2, s + 1):
        power = p.realization.to_element(xi_power(p, 2 * i - 1))
        if not bracket(eta_w, power).is_zero():
            raise PropertyViolation(f"[[eta, w], xi^{2 * i - 1}] != 0")
    second = xi2(p)
    x = bracket(eta_w, second)
    if x.is_zero():
        raise PropertyViolation("[[eta, w], xi_2] = 0")
    if not t.centralizer.contains(x):
        raise PropertyViolation("[[eta, w], xi_2] is not in g^xi")
    top = p.realization.to_element(xi_power(p, 2 * s - 1))
    if not bracket(bracket(eta, top), second).is_zero():
        raise PropertyViolation(f"[[eta, xi^{2 * s - 1}], xi_2] != 0")
    return x


def _gxi_matrix(p, rows, cols):
    """VectorMatrix with entries [[η, c], r] in g^ξ coordinates."""
    gxi = p.triple.centralizer
    eta = p.triple.f
    entries = {}
    for i, r in enumerate(rows):
        for j, c in enumerate(cols):
            value = bracket(bracket(eta, c), r)
            if value.is_zero():
                continue
            try:
                entries[(i, j)] = {k: v for k, v in enumerate(gxi.coordinates(value)) if v}
            except InputError as e:
                raise PropertyViolation(f"entry ({i + 1}, {j + 1}) leaves g^xi") from e
    return VectorMatrix(len(rows), len(cols), gxi.dim, entries)


def full_dmatrix(p, w):
    """The (s+1)×(s+1) matrix on {ξ, ξ³, …, ξ^(2s−1), w}."""
    basis = zprime_basis(p) + [w]
    return _gxi_matrix(p, basis, basis)


def mprime_matrix(p, w):
    """
    M′ with rows e_1..e_s, ξ₂ and columns e_1..e_s, w.

    Returns:
        tuple: (VectorMatrix, bool) where the flag says whether det M′ equals
        ±2^s((2s−1)!!)^2 <φ, x><φ, ξ^(2s−1)>^s as a polynomial.
    """
    s, _ = _two_part(p)
    x = verify_crochet(p, w)
    basis = zprime_basis(p)
    M = _gxi_matrix(p, basis + [xi2(p)], basis + [w])
    det, gens = symbolic_determinant(M)
    gxi = p.triple.centralizer
    lx = form_poly(dict(enumerate(gxi.coordinates(x))), gens)
    ltop = form_poly(dict(enumerate(gxi.coordinates(basis[-1]))), gens)
    c = 2 ** s * math.prod(range(1, 2 * s, 2)) ** 2
    target = lx * ltop ** s * c
    return M, (det == target or det == -target)


def classical_suite(p, trials=5, bound=1000, seed=0, rng=None, forms=10):
    """
    Every classical check for one partition nilpotent.

    Returns:
        dict: Report record; "ok" is the conjunction of the checks.
    """
    rng = rng if rng is not None else np.random.default_rng(seed)
    t = p.triple
    zp = zprime(p)
    z = t.center
    report = {
        "family": p.family,
        "partition": list(p.partition),
        "algebra": p.algebra.name,
        "dims": {"gxi": t.centralizer.dim, "z": z.dim, "zprime": zp.dim, "n": t.normalizer.dim},
        "distinguished": distinguished_partition(p.family, p.partition),
        "zprime_is_center": zp == z,
        "power_relations": power_relations(p),
    }
    cross = jacobson_morozov(t.e)
    report["jm_same_spectrum"] = ad_matrix(cross.h).charpoly() == ad_matrix(t.h).charpoly()
    checks = [report["power_relations"], report["jm_same_spectrum"], zp.is_subspace_of(z)]
    if zp.dim:
        sample = [[int(v) for v in rng.integers(-bound, bound, size=zp.dim, endpoint=True)]
                  for _ in range(forms)]
        report["dmatrix_closed_form"] = dmatrix_matches_closed_form(p) and d_determinant_check(p, sample)
        checks.append(report["dmatrix_closed_form"])
    if p.family == "so" and len(p.partition) == 2 and len(set(p.partition)) == 2 \
            and all(q % 2 for q in p.partition):
        s, _ = _two_part(p)
        w, _, lam = special_center_element(p)
        M, mprime_ok = mprime_matrix(p, w)
        det, _ = symbolic_determinant(full_dmatrix(p, w))
        report.update({
            "lambda": to_int(lam),
            "center_basis_ok": Subspace.span(p.algebra, zprime_basis(p) + [w]) == z,
            "full_d_singular": det.is_zero,
            "mprime_closed_form": mprime_ok,
            "mprime_rank": generic_rank(M, trials=trials, bound=bound, rng=rng),
            "direct_witness_w": direct_witness(t, w),
        })
        checks += [report["center_basis_ok"], report["full_d_singular"], mprime_ok,
                   report["mprime_rank"] == s + 1]
    theorems = verify_theorems(t, trials=trials, bound=bound, rng=rng)
    report["theorems"] = theorems.to_record()
    report["ok"] = bool(all(checks) and theorems.ok)
    return report
