"""First-principles curvature engine for basis-presented almost Norden structures.

Everything here is computed from the defining data (structure constants,
metric, almost complex structure, connection coefficients) by direct
evaluation of the textbook formulas; nothing relies on the closed forms that
hold on the block-diagonal family.  Those closed forms live in `oracles` and
the two routes are compared wherever both apply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .family import AlmostNordenStructure, Connection, StructureConstants
from .tensor import (
    LOWER,
    UPPER,
    ZERO,
    DenseTensor,
    TensorBuilder,
    cyclic_sum_3,
    evaluate_covariant,
    metric_dual,
    metric_square_norm,
)

Vector = tuple[Fraction, ...]


def basis_vector(dim: int, i: int) -> Vector:
    return tuple(Fraction(1) if k == i else ZERO for k in range(dim))


def _by_lower(t: DenseTensor) -> dict[int, list[tuple[int, Fraction]]]:
    # (1,1) tensor entries grouped by the lower index: j -> [(k, t^k_j)]
    out: dict[int, list[tuple[int, Fraction]]] = {}
    for (k, j), value in t.nonzero_items():
        out.setdefault(j, []).append((k, value))
    return out


def _by_upper(t: DenseTensor) -> dict[int, list[tuple[int, Fraction]]]:
    # (1,1) tensor entries grouped by the upper index: k -> [(j, t^k_j)]
    out: dict[int, list[tuple[int, Fraction]]] = {}
    for (k, j), value in t.nonzero_items():
        out.setdefault(k, []).append((j, value))
    return out


def _metric_rows(g: DenseTensor) -> dict[int, list[tuple[int, Fraction]]]:
    out: dict[int, list[tuple[int, Fraction]]] = {}
    for (i, j), value in g.nonzero_items():
        out.setdefault(i, []).append((j, value))
    return out


def metric_value(g: DenseTensor, x: Vector, y: Vector) -> Fraction:
    total = ZERO
    for (i, j), value in g.nonzero_items():
        if x[i] and y[j]:
            total += value * x[i] * y[j]
    return total


def apply_endomorphism(t: DenseTensor, x: Vector) -> Vector:
    out = [ZERO] * t.dim
    for (k, j), value in t.nonzero_items():
        if x[j]:
            out[k] += value * x[j]
    return tuple(out)


# ---------------------------------------------------------------------------
# the structure tensor of the almost complex structure and its classification
# ---------------------------------------------------------------------------


def fundamental_tensor(J: DenseTensor, g: DenseTensor, conn: Connection) -> DenseTensor:
    """F(X_i, X_j, X_k) = g((nabla_{X_i} J) X_j, X_k), as a (0,3) tensor.

    For left-invariant fields the covariant derivative of J reduces to
    (nabla_i J)^p_j = Gamma(i,m,p) J^m_j - J^p_m Gamma(i,j,m).
    """
    dim = conn.dim
    rows = conn.rows
    j_cols = _by_lower(J)
    g_rows = _metric_rows(g)
    out = TensorBuilder(dim, (LOWER, LOWER, LOWER))
    for i in range(dim):
        for j in range(dim):
            acc: dict[int, Fraction] = {}
            for m, jv in j_cols.get(j, ()):
                for p, gv in rows.get((i, m), ()):
                    acc[p] = acc.get(p, ZERO) + gv * jv
            for m, gv in rows.get((i, j), ()):
                for p, jv in j_cols.get(m, ()):
                    acc[p] = acc.get(p, ZERO) - jv * gv
            for p, value in acc.items():
                if not value:
                    continue
                for k, gv in g_rows.get(p, ()):
                    out.add((i, j, k), value * gv)
    return out.build()


def check_f_symmetries(F: DenseTensor, J: DenseTensor) -> bool:
    """F(x,y,z) = F(x,z,y) and F(x,Jy,Jz) = F(x,y,z) over all basis triples."""
    for (i, j, k), value in F.nonzero_items():
        if F[(i, k, j)] != value:
            return False
    j_by_upper = _by_upper(J)
    twisted = TensorBuilder(F.dim, (LOWER, LOWER, LOWER))
    for (i, m, p), value in F.nonzero_items():
        for j, jv1 in j_by_upper.get(m, ()):
            for k, jv2 in j_by_upper.get(p, ()):
                twisted.add((i, j, k), value * jv1 * jv2)
    return twisted.build() == F


def lee_form(F: DenseTensor, g_inv: DenseTensor) -> DenseTensor:
    """theta(z) = g^{ij} F(e_i, e_j, z), a (0,1) tensor."""
    out = TensorBuilder(F.dim, (LOWER,))
    for (i, j, k), value in F.nonzero_items():
        gv = g_inv[(i, j)]
        if gv:
            out.add((k,), gv * value)
    return out.build()


@dataclass(frozen=True)
class ClassificationResult:
    """Membership in the basic classes cut out by the structure tensor F."""

    in_w0: bool
    in_w1: bool
    in_w2: bool
    in_w3: bool
    theta: DenseTensor
    f_nonzero: bool


def w1_defining_tensor(theta: DenseTensor, J: DenseTensor, g: DenseTensor) -> DenseTensor:
    """The trace-built comparison tensor of the first basic class.

    (1/dim) { g(x,y) theta(z) + g(x,z) theta(y)
              + g(x,Jy) theta(Jz) + g(x,Jz) theta(Jy) }

    The coefficient is forced by trace consistency: contracting the right
    side with g over the first two slots must return theta itself.
    """
    dim = g.dim
    coeff = Fraction(1, dim)
    gj = [[ZERO] * dim for _ in range(dim)]  # g(X_i, J X_j)
    for (m, j), jv in J.nonzero_items():
        for i in range(dim):
            gv = g[(i, m)]
            if gv:
                gj[i][j] += gv * jv
    tj = [ZERO] * dim  # theta(J X_k)
    for (m, k), jv in J.nonzero_items():
        tv = theta[(m,)]
        if tv:
            tj[k] += tv * jv
    out = TensorBuilder(dim, (LOWER, LOWER, LOWER))
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                value = (
                    g[(i, j)] * theta[(k,)]
                    + g[(i, k)] * theta[(j,)]
                    + gj[i][j] * tj[k]
                    + gj[i][k] * tj[j]
                )
                if value:
                    out.set((i, j, k), coeff * value)
    return out.build()


def classify(
    F: DenseTensor, theta: DenseTensor, J: DenseTensor, g: DenseTensor
) -> ClassificationResult:
    """Decide membership in the basic classes by direct comparison of tensors."""
    in_w0 = F.is_zero()
    in_w3 = cyclic_sum_3(F).is_zero()
    j_by_upper = _by_upper(J)
    twisted = TensorBuilder(F.dim, (LOWER, LOWER, LOWER))
    for (i, j, m), value in F.nonzero_items():
        for k, jv in j_by_upper.get(m, ()):
            twisted.add((i, j, k), value * jv)
    in_w2 = theta.is_zero() and cyclic_sum_3(twisted.build()).is_zero()
    in_w1 = F == w1_defining_tensor(theta, J, g)
    return ClassificationResult(
        in_w0=in_w0,
        in_w1=in_w1,
        in_w2=in_w2,
        in_w3=in_w3,
        theta=theta,
        f_nonzero=not in_w0,
    )


# ---------------------------------------------------------------------------
# Nijenhuis tensor
# ---------------------------------------------------------------------------


def nijenhuis_tensor(C: StructureConstants, J: DenseTensor) -> DenseTensor:
    """N(X,Y) = [X,Y] + J[JX,Y] + J[X,JY] - [JX,JY], as a (1,2) tensor."""
    dim = C.dim
    rows = C.bracket_map
    j_cols = _by_lower(J)
    out = TensorBuilder(dim, (UPPER, LOWER, LOWER))
    for i in range(dim):
        for j in range(dim):
            for k, value in rows.get((i, j), ()):
                out.add((k, i, j), value)
            for a, ja in j_cols.get(i, ()):
                for m, cv in rows.get((a, j), ()):
                    for k, jm in j_cols.get(m, ()):
                        out.add((k, i, j), ja * cv * jm)
                for b, jb in j_cols.get(j, ()):
                    for k, cv in rows.get((a, b), ()):
                        out.add((k, i, j), -ja * jb * cv)
            for b, jb in j_cols.get(j, ()):
                for m, cv in rows.get((i, b), ()):
                    for k, jm in j_cols.get(m, ()):
                        out.add((k, i, j), jb * cv * jm)
    return out.build()


def nabla_j_norm_sq(F: DenseTensor, g_inv: DenseTensor) -> Fraction:
    """Square norm of nabla J: full self-contraction of F with three inverse metrics."""
    return metric_square_norm(F, g_inv)


def nijenhuis_norm_sq(N: DenseTensor, g: DenseTensor, g_inv: DenseTensor) -> Fraction:
    """Square norm of N: g^{ik} g^{js} g_ab N^a_{ij} N^b_{ks}."""
    dual = metric_dual(N, g, g_inv)
    total = ZERO
    for flat, value in enumerate(N.components):
        if value:
            total += value * dual.components[flat]
    return total


@dataclass(frozen=True)
class NijenhuisPackage:
    tensor: DenseTensor
    norm_sq: Fraction
    nabla_j_norm_sq: Fraction


def nijenhuis_package(
    C: StructureConstants,
    structure: AlmostNordenStructure,
    F: DenseTensor,
) -> NijenhuisPackage:
    N = nijenhuis_tensor(C, structure.j_tensor)
    return NijenhuisPackage(
        tensor=N,
        norm_sq=nijenhuis_norm_sq(N, structure.metric, structure.metric_inv),
        nabla_j_norm_sq=nabla_j_norm_sq(F, structure.metric_inv),
    )


# ---------------------------------------------------------------------------
# curvature
# ---------------------------------------------------------------------------


def curvature_tensor(C: StructureConstants, g: DenseTensor, conn: Connection) -> DenseTensor:
    """R(X,Y,Z,U) = g(R(X,Y)Z, U) with R(X,Y)Z = [nabla_X, nabla_Y]Z - nabla_{[X,Y]}Z.

    On left-invariant fields the components reduce to
    R^l_{ijk} = Gamma(j,k,p) Gamma(i,p,l) - Gamma(i,k,p) Gamma(j,p,l)
                - C(i,j,p) Gamma(p,k,l).
    """
    dim = C.dim
    rows = conn.rows
    brackets = C.bracket_map
    g_rows = _metric_rows(g)
    out = TensorBuilder(dim, (LOWER, LOWER, LOWER, LOWER))
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                acc: dict[int, Fraction] = {}
                for p, v in rows.get((j, k), ()):
                    for m, w in rows.get((i, p), ()):
                        acc[m] = acc.get(m, ZERO) + v * w
                for p, v in rows.get((i, k), ()):
                    for m, w in rows.get((j, p), ()):
                        acc[m] = acc.get(m, ZERO) - v * w
                for p, v in brackets.get((i, j), ()):
                    for m, w in rows.get((p, k), ()):
                        acc[m] = acc.get(m, ZERO) - v * w
                for m, value in acc.items():
                    if not value:
                        continue
                    for l, gv in g_rows.get(m, ()):
                        out.add((i, j, k, l), value * gv)
    return out.build()


def curvature_symmetries_ok(R: DenseTensor) -> bool:
    """R_{ijks} = R_{ksij} = -R_{jiks} = -R_{ijsk} over all index tuples."""
    for (i, j, k, s), value in R.nonzero_items():
        if R[(k, s, i, j)] != value:
            return False
        if R[(j, i, k, s)] != -value:
            return False
        if R[(i, j, s, k)] != -value:
            return False
    return True


def first_bianchi_ok(R: DenseTensor) -> bool:
    """Cyclic sum of R over the first three slots vanishes."""
    dim = R.dim
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                for l in range(dim):
                    if R[(i, j, k, l)] + R[(j, k, i, l)] + R[(k, i, j, l)]:
                        return False
    return True


def ricci_and_scalar(R: DenseTensor, g_inv: DenseTensor) -> tuple[DenseTensor, Fraction]:
    """rho(y,z) = g^{ij} R(e_i, y, z, e_j) and its full trace tau."""
    ricci = TensorBuilder(R.dim, (LOWER, LOWER))
    for (i, j, k, l), value in R.nonzero_items():
        gv = g_inv[(i, l)]
        if gv:
            ricci.add((j, k), gv * value)
    rho = ricci.build()
    tau = ZERO
    for (j, k), value in rho.nonzero_items():
        gv = g_inv[(j, k)]
        if gv:
            tau += gv * value
    return rho, tau


def weyl_tensor(
    R: DenseTensor, ricci: DenseTensor, tau: Fraction, g: DenseTensor
) -> DenseTensor:
    """W = R - (psi_1(rho) - tau/(m-1) pi_1) / (m-2), defined for dimension >= 3."""
    m = R.dim
    if m < 3:
        raise ValueError("Weyl tensor requires dimension at least 3")
    c = Fraction(1, m - 2)
    ct = tau / (m - 1)
    gm = [[g[(i, j)] for j in range(m)] for i in range(m)]
    rm = [[ricci[(i, j)] for j in range(m)] for i in range(m)]
    comps = list(R.components)
    pos = 0
    for x in range(m):
        for y in range(m):
            for z in range(m):
                gyz = gm[y][z]
                gxz = gm[x][z]
                ryz = rm[y][z]
                rxz = rm[x][z]
                for u in range(m):
                    psi = gyz * rm[x][u] - gxz * rm[y][u] + ryz * gm[x][u] - rxz * gm[y][u]
                    pi = gyz * gm[x][u] - gxz * gm[y][u]
                    comps[pos] -= c * (psi - ct * pi)
                    pos += 1
    return DenseTensor(m, (LOWER, LOWER, LOWER, LOWER), tuple(comps))


def local_symmetry_check(R: DenseTensor, conn: Connection) -> bool:
    """Does nabla R vanish identically?

    With constant component functions the covariant derivative reduces to
    the four Gamma-contractions; the check runs over all 5-index tuples.
    """
    dim = R.dim
    rows = conn.rows
    comps = R.components
    d3, d2, d1 = dim**3, dim**2, dim
    for h in range(dim):
        gamma_h = {a: rows[(h, a)] for a in range(dim) if (h, a) in rows}
        if not gamma_h:
            continue
        for i in range(dim):
            row_i = gamma_h.get(i)
            for j in range(dim):
                row_j = gamma_h.get(j)
                for k in range(dim):
                    row_k = gamma_h.get(k)
                    for l in range(dim):
                        row_l = gamma_h.get(l)
                        total = ZERO
                        if row_i:
                            for m, v in row_i:
                                r = comps[m * d3 + j * d2 + k * d1 + l]
                                if r:
                                    total += v * r
                        if row_j:
                            for m, v in row_j:
                                r = comps[i * d3 + m * d2 + k * d1 + l]
                                if r:
                                    total += v * r
                        if row_k:
                            for m, v in row_k:
                                r = comps[i * d3 + j * d2 + m * d1 + l]
                                if r:
                                    total += v * r
                        if row_l:
                            for m, v in row_l:
                                r = comps[i * d3 + j * d2 + k * d1 + m]
                                if r:
                                    total += v * r
                        if total:
                            return False
    return True


# ---------------------------------------------------------------------------
# sectional and bisectional curvatures
# ---------------------------------------------------------------------------


class PlaneType(str, Enum):
    HOLOMORPHIC = "holomorphic"
    TOTALLY_REAL = "totally_real"
    GENERIC = "generic"


@dataclass(frozen=True)
class SectionalResult:
    value: Fraction | None
    degenerate: bool


def sectional_curvature(R: DenseTensor, g: DenseTensor, x: Vector, y: Vector) -> SectionalResult:
    """k(x,y) = R(x,y,y,x) / (g(x,x)g(y,y) - g(x,y)^2); degenerate planes are flagged."""
    den = metric_value(g, x, x) * metric_value(g, y, y) - metric_value(g, x, y) ** 2
    if not den:
        return SectionalResult(None, True)
    num = evaluate_covariant(R, x, y, y, x)
    return SectionalResult(num / den, False)


def sectional_basis(R: DenseTensor, g: DenseTensor, i: int, j: int) -> SectionalResult:
    return sectional_curvature(R, g, basis_vector(R.dim, i), basis_vector(R.dim, j))


def plane_type(i: int, j: int, J: DenseTensor, g: DenseTensor) -> PlaneType:
    """Classify the coordinate 2-plane span{X_i, X_j} relative to J and g."""
    if i == j:
        raise ValueError("a 2-plane needs two distinct basis directions")
    plane = {i, j}
    holomorphic = True
    for a in plane:
        for k in range(J.dim):
            if k not in plane and J[(k, a)]:
                holomorphic = False
                break
        if not holomorphic:
            break
    if holomorphic:
        return PlaneType.HOLOMORPHIC
    dim = J.dim
    for a in (i, j):
        ja = apply_endomorphism(J, basis_vector(dim, a))
        for b in (i, j):
            if metric_value(g, ja, basis_vector(dim, b)):
                return PlaneType.GENERIC
    return PlaneType.TOTALLY_REAL


def _exact_sqrt(q: Fraction) -> Fraction | None:
    # exact square root of a nonnegative rational, if it is a perfect square
    if q < 0:
        return None
    num = math.isqrt(q.numerator)
    den = math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


@dataclass(frozen=True)
class BisectionalResult:
    """Curvature pairing of the two J-invariant planes spanned by x and y.

    `value` is exact when the radicand is a perfect rational square;
    otherwise the pair (numerator, radicand) is exact and `approx` carries a
    display-only float for value = numerator / sqrt(radicand).
    """

    defined: bool
    value: Fraction | None = None
    numerator: Fraction | None = None
    radicand: Fraction | None = None
    approx: float | None = None


def bisectional_curvature(
    R: DenseTensor, g: DenseTensor, J: DenseTensor, x: Vector, y: Vector
) -> BisectionalResult:
    """h(x,y) = R(x,Jx,y,Jy) / sqrt(pi_1(x,Jx,x,Jx) pi_1(y,Jy,y,Jy)).

    Undefined when either couple (g(v,v), g(v,Jv)) is (0,0), i.e. when v
    lies along a totally isotropic direction.  The sign convention is fixed
    so that h(x,x) is the sectional curvature of the plane span{x, Jx}.
    """
    jx = apply_endomorphism(J, x)
    jy = apply_endomorphism(J, y)
    for v, jv in ((x, jx), (y, jy)):
        if not metric_value(g, v, v) and not metric_value(g, v, jv):
            return BisectionalResult(defined=False)
    # pi_1(v, Jv, v, Jv) = g(v,Jv)^2 + g(v,v)^2 > 0 by the Norden anti-isometry
    factor_x = metric_value(g, x, jx) ** 2 + metric_value(g, x, x) ** 2
    factor_y = metric_value(g, y, jy) ** 2 + metric_value(g, y, y) ** 2
    radicand = factor_x * factor_y
    numerator = evaluate_covariant(R, x, jx, y, jy)
    root = _exact_sqrt(radicand)
    if root is not None:
        return BisectionalResult(
            defined=True,
            value=numerator / root,
            numerator=numerator,
            radicand=radicand,
            approx=float(numerator) / float(root),
        )
    return BisectionalResult(
        defined=True,
        value=None,
        numerator=numerator,
        radicand=radicand,
        approx=float(numerator) / math.sqrt(float(radicand)),
    )


@dataclass(frozen=True)
class SectionalEntry:
    value: Fraction | None
    degenerate: bool
    plane: PlaneType


@dataclass(frozen=True)
class CurvaturePackage:
    riemann: DenseTensor
    ricci: DenseTensor
    scalar: Fraction
    weyl: DenseTensor
    sectional_basic: dict[tuple[int, int], SectionalEntry]
    locally_symmetric: bool


def curvature_package(
    C: StructureConstants,
    structure: AlmostNordenStructure,
    conn: Connection,
) -> CurvaturePackage:
    """Assemble every curvature-level object from first principles."""
    g, g_inv, J = structure.metric, structure.metric_inv, structure.j_tensor
    R = curvature_tensor(C, g, conn)
    ricci, tau = ricci_and_scalar(R, g_inv)
    sectional: dict[tuple[int, int], SectionalEntry] = {}
    for i in range(C.dim):
        for j in range(i + 1, C.dim):
            res = sectional_basis(R, g, i, j)
            sectional[(i, j)] = SectionalEntry(res.value, res.degenerate, plane_type(i, j, J, g))
    return CurvaturePackage(
        riemann=R,
        ricci=ricci,
        scalar=tau,
        weyl=weyl_tensor(R, ricci, tau, g),
        sectional_basic=sectional,
        locally_symmetric=local_symmetry_check(R, conn),
    )


# ---------------------------------------------------------------------------
# theorem predicates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IsotropyPredicates:
    """The four equivalent vanishing conditions on a family member."""

    nabla_j_isotropic: bool
    scalar_flat: bool
    nijenhuis_isotropic: bool
    parameter_null: bool

    def as_tuple(self) -> tuple[bool, bool, bool, bool]:
        return (
            self.nabla_j_isotropic,
            self.scalar_flat,
            self.nijenhuis_isotropic,
            self.parameter_null,
        )

    @property
    def all_agree(self) -> bool:
        return len(set(self.as_tuple())) == 1


def isotropic_kahler_predicates(
    nabla_j_sq: Fraction,
    nijenhuis_sq: Fraction,
    tau: Fraction,
    param_norm_sq: Fraction,
) -> IsotropyPredicates:
    return IsotropyPredicates(
        nabla_j_isotropic=nabla_j_sq == 0,
        scalar_flat=tau == 0,
        nijenhuis_isotropic=nijenhuis_sq == 0,
        parameter_null=param_norm_sq == 0,
    )


@dataclass(frozen=True)
class ConstantCurvatureVerdict:
    constant_holomorphic: bool
    constant_totally_real: bool


def constant_curvature_predicates(
    R: DenseTensor, g: DenseTensor, J: DenseTensor
) -> ConstantCurvatureVerdict:
    """Equality of the basic sectional curvatures, split by plane type.

    Basic planes are the coordinate 2-planes inside each block of four basis
    directions.  A degenerate basic plane rules the corresponding predicate
    false, since no common constant value exists.
    """
    dim = R.dim
    if dim % 4:
        raise ValueError("the block layout needs dimension divisible by 4")
    holomorphic: list[Fraction | None] = []
    totally_real: list[Fraction | None] = []
    for base in range(0, dim, 4):
        for i in range(base, base + 4):
            for j in range(i + 1, base + 4):
                res = sectional_basis(R, g, i, j)
                kind = plane_type(i, j, J, g)
                if kind is PlaneType.HOLOMORPHIC:
                    holomorphic.append(res.value)
                elif kind is PlaneType.TOTALLY_REAL:
                    totally_real.append(res.value)

    def _constant(values: list[Fraction | None]) -> bool:
        if not values or any(v is None for v in values):
            return False
        return len(set(values)) == 1

    return ConstantCurvatureVerdict(
        constant_holomorphic=_constant(holomorphic),
        constant_totally_real=_constant(totally_real),
    )
