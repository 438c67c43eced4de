"""
slice.py

sl2-triples through nilpotent elements, and the orbit catalog.

An Sl2Triple caches the subspaces everything downstream works with: the
centralizer g^e, its center z, the normalizer n, and the ad-h eigenspace
decompositions of g^e and z.
"""
import re
from dataclasses import dataclass, field
from functools import cached_property

from sympy import QQ

from .errors import InputError, CatalogParseError, DataIntegrityError, PropertyViolation
from .exactla import QMatrix, rational, solve, nilpotency_index, to_int, rref, kernel_basis
from .liecore import (
    Subspace, bracket, ad_matrix, centralizer, center_of, normalizer,
    orthogonal, eigenspaces, image, bracket_space,
)
from .chevalley import build_simple, check_type, weighted_dynkin, element_from_roots
from .utils import bundled_catalog_path


class Sl2Triple:
    """
    (e, h, f) with [h, e] = 2e, [e, f] = h, [h, f] = −2f.

    Raises:
        InputError: If the relations fail.
    """

    def __init__(self, e, h, f):
        g = e.parent
        if h.parent is not g or f.parent is not g:
            raise InputError("triple elements belong to different algebras")
        if e.is_zero():
            raise InputError("e must be nonzero")
        if bracket(h, e) != 2 * e:
            raise InputError("[h, e] != 2e")
        if bracket(e, f) != h:
            raise InputError("[e, f] != h")
        if bracket(h, f) != -2 * f:
            raise InputError("[h, f] != -2f")
        self.e, self.h, self.f = e, h, f

    @property
    def algebra(self):
        return self.e.parent

    def __repr__(self):
        return f"<Sl2Triple in {self.algebra.name}>"

    @cached_property
    def centralizer(self):
        """g^e."""
        return centralizer(self.e)

    @cached_property
    def center(self):
        """z(g^e)."""
        return center_of(self.centralizer)

    @cached_property
    def normalizer(self):
        """n(g^e)."""
        return normalizer(self.centralizer)

    @cached_property
    def centralizer_spectrum(self):
        """ad-h eigenspaces of g^e, by ascending weight."""
        return eigenspaces(self.h, self.centralizer)

    @cached_property
    def center_spectrum(self):
        """ad-h eigenspaces of z(g^e), by ascending weight."""
        return eigenspaces(self.h, self.center)

    @property
    def weights(self):
        """Multiset of ad-h weights on z(g^e), ascending."""
        out = []
        for lam, space in self.center_spectrum:
            out += [to_int(lam)] * space.dim
        return tuple(out)

    @cached_property
    def adapted_basis(self):
        """
        Weight-adapted basis of g^e: list of (weight, z part, extension).

        Within each weight the z-eigenspace basis comes first and is extended
        to a basis of the g^e-eigenspace by echelon rows not yet spanned.
        """
        z_by_weight = {lam: space for lam, space in self.center_spectrum}
        out = []
        for lam, space in self.centralizer_spectrum:
            zpart = z_by_weight.get(lam)
            zvecs = zpart.elements() if zpart is not None else []
            current = Subspace.span(self.algebra, zvecs)
            ext = []
            for v in space.elements():
                if not current.contains(v):
                    ext.append(v)
                    current = Subspace.span(self.algebra, zvecs + ext)
            out.append((to_int(lam), zvecs, ext))
        return out


def is_nilpotent(x):
    """ad x nilpotent, by squaring up to the dimension."""
    return nilpotency_index(ad_matrix(x)) is not None


def _solve_f(e, h, ad_e):
    """f with [e, f] = h and [h, f] = −2f, or None."""
    g = e.parent
    shifted = ad_matrix(h) + QMatrix.identity(g.dim).scale(2)
    system = QMatrix.vstack(ad_e, shifted)
    rhs = list(h.coeffs) + [QQ(0)] * g.dim
    coeffs = solve(system, rhs)
    return None if coeffs is None else g.element(coeffs)


def _cartan_h(e):
    """h in the Cartan span with [h, e] = 2e, or None."""
    g = e.parent
    if not g.cartan:
        return None
    cols = [bracket(g.basis(k), e).coeffs for k in g.cartan]
    system = QMatrix.from_rows([[c[r] for c in cols] for r in range(g.dim)], len(cols))
    coeffs = solve(system, [2 * c for c in e.coeffs])
    if coeffs is None:
        return None
    out = [QQ(0)] * g.dim
    for k, c in zip(g.cartan, coeffs):
        out[k] = c
    return g.element(out)


def jacobson_morozov(e):
    """
    Complete a nonzero nilpotent e to an sl2-triple.

    Raises:
        InputError: If e is zero or not nilpotent.
    """
    g = e.parent
    if e.is_zero():
        raise InputError("e must be nonzero")
    ad_e = ad_matrix(e)
    if nilpotency_index(ad_e) is None:
        raise InputError("e is not nilpotent")
    h = _cartan_h(e)
    if h is not None:
        f = _solve_f(e, h, ad_e)
        if f is not None:
            return Sl2Triple(e, h, f)
    u = solve(ad_e @ ad_e, [-2 * c for c in e.coeffs])
    if u is None:
        raise PropertyViolation("ad_e^2(u) = -2e has no solution for a nilpotent e")
    h = bracket(e, g.element(u))
    f = _solve_f(e, h, ad_e)
    if f is None:
        raise PropertyViolation("no f completes (e, h) although h lies in [e, g]")
    return Sl2Triple(e, h, f)


def is_regular(t):
    """dim g^e equals the rank of g."""
    if t.algebra.rank is None:
        raise InputError(f"rank of {t.algebra.name} is unknown")
    return t.centralizer.dim == t.algebra.rank


def _eigenspace_dim(t, value):
    M = ad_matrix(t.h) - QMatrix.identity(t.algebra.dim).scale(value)
    return t.algebra.dim - len(rref(M)[1])


def is_distinguished(t):
    """dim g(0) equals dim g(2) for the ad-h grading."""
    return _eigenspace_dim(t, 0) == _eigenspace_dim(t, 2)


# catalog

@dataclass(frozen=True)
class OrbitSpec:
    """One catalog entry: the nilpotent e as root vectors plus its characteristic."""

    algebra_type: str
    rank: int
    label: str
    characteristic: tuple
    e_terms: tuple
    aliases: tuple = ()
    position: int = 0
    lineno: int = 0

    @property
    def algebra(self):
        return f"{self.algebra_type}{self.rank}"

    @property
    def key(self):
        return f"{self.algebra}:{self.position}"


_HEADER = re.compile(r'^orbit\s+([A-G])(\d+)\s+"([^"]+)"$')
_ALIAS = re.compile(r'^alias\s+"([^"]+)"$')
_TERM = re.compile(r'^e\s+\+\s+([-\d,\s]+?)(?:\s*\*\s*(\S+))?$')


def parse_catalog(text):
    """
    Parse catalog text into OrbitSpecs without recomputing anything.

    Raises:
        CatalogParseError: With the offending line number.
    """
    specs, current, counts = [], None, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("orbit"):
            if current is not None:
                raise CatalogParseError(lineno, "orbit block opened before 'end'")
            m = _HEADER.match(line)
            if not m:
                raise CatalogParseError(lineno, f"bad orbit header {line!r}")
            type_, rank, label = m.group(1), int(m.group(2)), m.group(3)
            try:
                check_type(type_, rank)
            except InputError as e:
                raise CatalogParseError(lineno, str(e)) from e
            current = {"type": type_, "rank": rank, "label": label, "char": None,
                       "terms": [], "aliases": [], "lineno": lineno}
            continue
        if current is None:
            raise CatalogParseError(lineno, f"{line.split()[0]!r} outside an orbit block")
        if line == "end":
            if current["char"] is None:
                raise CatalogParseError(lineno, f"orbit {current['label']} has no 'char' line")
            if not current["terms"]:
                raise CatalogParseError(lineno, f"orbit {current['label']} has no e terms")
            algebra = f"{current['type']}{current['rank']}"
            counts[algebra] = counts.get(algebra, 0) + 1
            specs.append(OrbitSpec(current["type"], current["rank"], current["label"],
                                   tuple(current["char"]), tuple(current["terms"]),
                                   tuple(current["aliases"]), counts[algebra], current["lineno"]))
            current = None
        elif line.startswith("char"):
            try:
                values = [int(v) for v in line.split()[1:]]
            except ValueError as e:
                raise CatalogParseError(lineno, f"non-integer characteristic {line!r}") from e
            if len(values) != current["rank"]:
                raise CatalogParseError(lineno, f"characteristic has {len(values)} values, rank is {current['rank']}")
            current["char"] = values
        elif line.startswith("alias"):
            m = _ALIAS.match(line)
            if not m:
                raise CatalogParseError(lineno, f"bad alias line {line!r}")
            current["aliases"].append(m.group(1))
        elif line.startswith("e"):
            m = _TERM.match(line)
            if not m:
                raise CatalogParseError(lineno, f"bad e term {line!r}")
            try:
                root = tuple(int(v) for v in m.group(1).replace(" ", "").split(","))
                coeff = rational(m.group(2)) if m.group(2) else QQ(1)
            except (ValueError, InputError) as e:
                raise CatalogParseError(lineno, f"bad e term {line!r}") from e
            if len(root) != current["rank"]:
                raise CatalogParseError(lineno, f"root {root} has wrong length for rank {current['rank']}")
            current["terms"].append((root, coeff))
        else:
            raise CatalogParseError(lineno, f"unknown directive {line!r}")
    if current is not None:
        raise CatalogParseError(len(text.splitlines()), f"orbit {current['label']} is missing 'end'")
    return specs


def build_orbit(spec):
    """
    The nilpotent e of a catalog entry and its sl2-triple.

    Raises:
        DataIntegrityError: If a term is not a positive root, has ad-h weight
            other than 2, or the recomputed characteristic differs.
    """
    algebra, R, basis = build_simple(spec.algebra_type, spec.rank)
    for root, _ in spec.e_terms:
        if not R.is_positive_root(root):
            raise DataIntegrityError(spec.label, f"{root} is not a positive root of {spec.algebra}")
        weight = sum(a * c for a, c in zip(spec.characteristic, root))
        if weight != 2:
            raise DataIntegrityError(spec.label, f"root {root} has weight {weight}, not 2")
    e = element_from_roots(basis, spec.e_terms)
    try:
        t = jacobson_morozov(e)
    except InputError as err:
        raise DataIntegrityError(spec.label, str(err)) from err
    try:
        found = weighted_dynkin(t.h)
    except InputError as err:
        raise DataIntegrityError(spec.label, str(err)) from err
    if tuple(found) != tuple(spec.characteristic):
        raise DataIntegrityError(spec.label, f"characteristic {tuple(found)} != stored {spec.characteristic}")
    return t


def load_catalog(text, validate=True):
    """
    Parse catalog text, re-validating every orbit unless validate is False.

    Returns:
        list of OrbitSpec: In file order.
    """
    specs = parse_catalog(text)
    if validate:
        for spec in specs:
            build_orbit(spec)
    return specs


def read_catalog(path=None, validate=False):
    """Load the catalog at `path`, or the bundled one."""
    if path is None:
        text = bundled_catalog_path().read_text(encoding="utf-8")
    else:
        try:
            with open(path, "r", encoding="utf-8") as f:
                text = f.read()
        except OSError as e:
            raise InputError(f"cannot read catalog {path}: {e}") from e
    return load_catalog(text, validate=validate)


def find_orbit(specs, key):
    """
    Look an orbit up by label, alias or "<TYPE><RANK>:<n>".

    Raises:
        InputError: If nothing matches.
    """
    for spec in specs:
        if key == spec.label or key in spec.aliases or key == spec.key:
            return spec
    raise InputError(f"no orbit {key!r} in the catalog")


@dataclass
class OrbitReport:
    """Per-orbit data; verdicts are filled in by the verification steps."""

    label: str
    algebra: str
    characteristic: tuple
    dims: dict
    weights: tuple
    regular: bool
    distinguished: bool
    verdicts: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.dims["n"] != self.dims["gxi"] + self.dims["z"]:
            raise PropertyViolation(
                f"{self.label}: dim n = {self.dims['n']} but dim g^e + dim z = {self.dims['gxi'] + self.dims['z']}")

    def to_record(self):
        return {
            "orbit": self.label,
            "algebra": self.algebra,
            "characteristic": list(self.characteristic),
            "dims": dict(self.dims),
            "weights": list(self.weights),
            "regular": self.regular,
            "distinguished": self.distinguished,
            **self.verdicts,
        }


def orbit_report(t, label=None):
    """Dimensions, weights and flags of the orbit through t.e."""
    g = t.algebra
    characteristic = ()
    if g.root_system is not None and g.cartan and all(k in set(g.cartan) for k in t.h.support()):
        characteristic = tuple(g.root_system.reflect_to_dominant(weighted_dynkin(t.h)))
    return OrbitReport(
        label=label or g.name,
        algebra=g.name,
        characteristic=characteristic,
        dims={"gxi": t.centralizer.dim, "z": t.center.dim, "n": t.normalizer.dim},
        weights=t.weights,
        regular=is_regular(t),
        distinguished=is_distinguished(t),
    )


def structure_checks(t):
    """
    Subspace identities relating g^e, z, n and the triple.

    Returns:
        dict of bool, one per identity.
    """
    g = t.algebra
    e, f = t.e, t.f
    gxi, z, n = t.centralizer, t.center, t.normalizer
    whole = Subspace.whole(g)
    checks = {}

    pre_z = _preimage(e, z)
    checks["n_is_preimage_of_z"] = pre_z == n
    checks["bracket_n_e_is_z"] = image(e, n) == z
    checks["n_is_gxi_plus_f_z"] = (gxi + image(f, z)) == n and n.dim == gxi.dim + z.dim
    checks["normalizer_of_center"] = normalizer(z) == n

    e_g = image(e, whole)
    f_g = image(f, whole)
    checks["gxi_perp_is_e_g"] = orthogonal(gxi) == e_g
    checks["gxi_complements_f_g"] = gxi.intersect(f_g).dim == 0 and (gxi + f_g) == whole

    # (g^e ⊕ [f, g']) ^perp = [e, g'^perp] for ad-h stable g' ⊆ g^e
    def general(sub):
        return orthogonal(gxi + image(f, sub)) == image(e, orthogonal(sub))

    checks["orthogonal_general_z"] = general(z)
    checks["n_perp"] = orthogonal(n) == image(e, bracket_space(gxi, whole))
    checks["gxi_plus_f_gxi_perp"] = orthogonal(gxi + image(f, gxi)) == image(e, e_g)
    gfe = bracket_space(whole, gxi)
    checks["z_perp"] = orthogonal(z) == gfe
    z_plus = bracket_space(whole, centralizer(f))
    checks["z_complements_g_gf"] = z.intersect(z_plus).dim == 0 and (z + z_plus) == whole
    return checks


def _preimage(x, S):
    """{y : [y, x] ∈ S}."""
    g = x.parent
    # [y, x] = −ad_x(y); annihilator rows Q of S give Q·ad_x·y = 0
    Q = kernel_basis(S.basis) if S.dim else QMatrix.identity(g.dim)
    if Q.rows == 0:
        return Subspace.whole(g)
    ker = kernel_basis(Q @ ad_matrix(x))
    return Subspace.span(g, ker.to_rows())
