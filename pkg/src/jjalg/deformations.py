"""Linear deformations, Nijenhuis elements and Nijenhuis operators.

Both species share one set of formulas through
    theta_A(x) = L_x          (JJ)   or  L_x + R_x        (pre-JJ)
    theta_V(x) = rho(x)       (JJ)   or  rho(x) + mu(x)   (pre-JJ)
so that the coboundary of x in C^0(V, A) is partial(x) = theta_A T - T theta_V.

Every "for all t" statement is decided on the coefficients of a polynomial in t.
Polynomials are lists of coefficient arrays, lowest degree first (see _pmul).
"""
from dataclasses import dataclass

import numpy as np

from .algebras import (FDAlgebra, check_structure, is_algebra_morphism, is_rota_baxter_weight,
                       jacobian_tensor, left_mult, require, right_mult, tensor_check)
from .errors import (PASS, DimensionError, NotJacobiJordan, NotRelativeRB,
                     PreconditionError, SingularMatrixError, SingularParameter, TheoremViolation,
                     all_of)
from .fields import GF
from .linalg import coerce, identity, invert, zeros
from .relative_rb import (MorphismPair, _inner, _product_images, induced_product, is_rb_morphism,
                          is_relative_rb, mixed_defect, rb_defect)
from .representations import semidirect_product

SPECIES_KIND = {"jj": "jacobi_jordan", "prejj": "left_prejj"}


# -- polynomials in t with array coefficients ------------------------------------------------

def _pmul(fn, p, q):
    """Coefficients of fn(P(t), Q(t)) for fn bilinear."""
    out = [None] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            term = fn(a, b)
            out[i + j] = term if out[i + j] is None else out[i + j] + term
    return out


def _psub(p, q):
    n = max(len(p), len(q))
    pad = lambda r, k: r[k] if k < len(r) else 0 * (p[0] if p else q[0])
    return [pad(p, k) - pad(q, k) for k in range(n)]


def _poly_check(coeffs, nargs, condition, fmt=None):
    for k, c in enumerate(coeffs):
        chk = tensor_check(c, nargs, f"{condition} (t^{k} coefficient)", fmt)
        if not chk:
            return chk
    return PASS


def _structure_defects(c, species):
    """Defect tensors of the species identities, each homogeneous in c."""
    if species == "jj":
        return [("commutativity", c - np.einsum("jik->ijk", c)),
                ("Jacobi identity", jacobian_tensor(c))]
    a = np.einsum("ijm,mkl->ijkl", c, c) + np.einsum("jkm,iml->ijkl", c, c)
    return [("anti-associator skew-symmetry in (x, y)", a + np.einsum("jikl->ijkl", a))]


def _structure_pencil_check(c0, c1, species, fmt=None):
    """Does c0 + t c1 satisfy the species identities for every t?"""
    for name, d0 in _structure_defects(c0, species):
        d_sum = dict(_structure_defects(c0 + c1, species))[name]
        d1 = dict(_structure_defects(c1, species))[name]
        if name == "commutativity":
            coeffs = [d0, d1]
        else:
            coeffs = [d0, d_sum - d0 - d1, d1]
        chk = _poly_check(coeffs, d0.ndim - 1, name, fmt)
        if not chk:
            return chk
    return PASS


# -- theta maps and the coboundary of an element ---------------------------------------------

def theta_a(ctx, x):
    x = ctx.alg.vector(x)
    if ctx.species == "jj":
        return left_mult(ctx.alg, x)
    return left_mult(ctx.alg, x) + right_mult(ctx.alg, x)


def theta_v(ctx, x):
    x = ctx.alg.vector(x)
    r = np.einsum("i,iab->ab", x, ctx.rho)
    if ctx.species == "jj":
        return r
    return r + np.einsum("i,iab->ab", x, ctx.mu)


def partial(ctx, x):
    """partial(x) = theta_A(x) T - T theta_V(x), an a x v matrix."""
    return theta_a(ctx, x) @ ctx.t - ctx.t @ theta_v(ctx, x)


def coboundary_generator(ctx, x):
    """J = -partial(x)."""
    return -partial(ctx, x)


# -- deformations of a relative RB operator --------------------------------------------------

@dataclass(frozen=True, eq=False)
class DeformationGenerator:
    ctx: object             # RelRBContext
    z: np.ndarray

    def __post_init__(self):
        z = coerce(self.z, self.ctx.field)
        if z.shape != self.ctx.t.shape:
            raise DimensionError(f"generator of shape {z.shape}, operator is {self.ctx.t.shape}")
        object.__setattr__(self, "z", z)


def _require_rb(ctx):
    require(is_relative_rb(ctx), NotRelativeRB, "not a relative Rota-Baxter operator")


def generates_rb_deformation(g):
    """Z is itself an operator and T(u)Z(v) + Z(u)T(v) = T(.. Z ..) + Z(.. T ..)."""
    ctx = g.ctx
    _require_rb(ctx)
    fmt = ctx.alg.fmt
    return all_of(tensor_check(rb_defect(ctx, g.z), 2, "generator is Rota-Baxter", fmt),
                  tensor_check(mixed_defect(ctx, ctx.t, g.z), 2,
                               "mixed identity between T and the generator", fmt))


def rb_pencil_polynomial(ctx, t0, t1):
    """Coefficients in t of the operator defect of t0 + t t1."""
    c, rho, mu = ctx.alg.c, ctx.rho, ctx.mu
    tt = [t0, t1]
    lhs = _pmul(lambda a, b: np.einsum("pi,qj,pqk->ijk", a, b, c), tt, tt)
    inner = [_inner(t0, rho, mu), _inner(t1, rho, mu)]
    rhs = _pmul(lambda w, a: np.einsum("ijb,kb->ijk", w, a), inner, tt)
    return _psub(lhs, rhs)


def generates_rb_deformation_polynomial(g):
    """Same question, answered by expanding T + tZ as a polynomial in t."""
    ctx = g.ctx
    return _poly_check(rb_pencil_polynomial(ctx, ctx.t, g.z), 2, "T + tZ is Rota-Baxter",
                       ctx.alg.fmt)


def induced_product_deformation(g):
    """omega(u, v) = rho(Zu)v + mu(Zv)u, the first-order change of the induced product."""
    ctx = g.ctx
    require(generates_rb_deformation(g), PreconditionError, "Z does not generate a deformation")
    omega = _inner(g.z, ctx.rho, ctx.mu)
    shifted = induced_product(ctx, ctx.t + g.z) - induced_product(ctx)
    if not bool(np.all(shifted == omega)):
        raise TheoremViolation("induced product is not affine in t with slope omega")
    chk = _structure_pencil_check(induced_product(ctx), omega, ctx.species)
    if not chk:
        raise TheoremViolation("induced product plus t omega fails the structure identities", chk)
    return omega


def _morphism_conditions(ctx, x):
    """Conditions making (Id + t theta_A, Id + t theta_V) a morphism for every t,
    apart from the two that involve operators."""
    alg, c = ctx.alg, ctx.alg.c
    x = alg.vector(x)
    fmt = alg.fmt
    ta, tv = theta_a(ctx, x), theta_v(ctx, x)
    mul = lambda u, w: np.einsum("py,qz,pqk->yzk", u, w, c)
    ident = identity(alg.dim, alg.field)
    checks = [tensor_check(mul(ta, ta), 2, "theta(y) theta(z) = 0", fmt)]
    if ctx.species == "jj":
        rx = right_mult(alg, x)
        xy_z = mul(ta, ident)
        zx_y = np.einsum("zyk->yzk", mul(rx, ident))
        yz_x = np.einsum("yzm,km->yzk", c, rx)
        checks.append(tensor_check(xy_z + zx_y - yz_x, 2,
                                   "(x*y)*z + (z*x)*y - (y*z)*x = 0", fmt))
    else:
        # theta(y.z) = theta(y).z + y.theta(z)
        lhs = np.einsum("yzm,km->yzk", c, ta)
        rhs = mul(ta, ident) + mul(ident, ta)
        checks.append(tensor_check(lhs - rhs, 2, "theta is a derivation", fmt))
    actions = [("rho", ctx.rho)] if ctx.species == "jj" else [("rho", ctx.rho), ("mu", ctx.mu)]
    for tag, act in actions:
        a_of_theta = np.einsum("py,pab->yab", ta, act)          # act(theta_A y)
        checks.append(tensor_check(np.einsum("yab,bc->yac", a_of_theta, tv), 1,
                                   f"{tag}(theta_A y) theta_V = 0"))
        comm = (a_of_theta + np.einsum("yab,bc->yac", act, tv)
                - np.einsum("ab,ybc->yac", tv, act))
        checks.append(tensor_check(comm, 1,
                                   f"{tag}(theta_A y) + {tag}(y) theta_V - theta_V {tag}(y) = 0"))
    return checks


def deformation_equivalence_check(g1, g2, x):
    """Does (Id + t theta_A(x), Id + t theta_V(x)) map T + t J2 to T + t J1 for every t?"""
    ctx = g1.ctx
    if g2.ctx is not ctx and (g2.ctx.alg != ctx.alg or g2.ctx.rep != ctx.rep
                              or not bool(np.all(g2.ctx.t == ctx.t))):
        raise DimensionError("generators deform different operators")
    for g in (g1, g2):
        require(generates_rb_deformation(g), PreconditionError, "input does not generate a deformation")
    ta, tv = theta_a(ctx, x), theta_v(ctx, x)
    fmt = ctx.alg.fmt
    j1, j2 = g1.z, g2.z
    checks = _morphism_conditions(ctx, x)
    checks.append(tensor_check((j2 - j1 - (ctx.t @ tv - ta @ ctx.t)).T, 1,
                               "J2 - J1 = -partial(x)", fmt))
    checks.append(tensor_check((j1 @ tv - ta @ j2).T, 1, "J1 theta_V = theta_A J2", fmt))
    return all_of(*checks)


def is_nijenhuis_element(ctx, x):
    _require_rb(ctx)
    ta, tv = theta_a(ctx, x), theta_v(ctx, x)
    n1 = ta @ ctx.t @ tv - ta @ ta @ ctx.t
    return all_of(*_morphism_conditions(ctx, x),
                  tensor_check(n1.T, 1, "theta_A T theta_V - theta_A theta_A T = 0", ctx.alg.fmt))


@dataclass(frozen=True)
class NijenhuisSet:
    """Nijenhuis elements of an operator: an exhaustive list over F_p, a predicate always."""

    ctx: object
    elements: tuple = None       # tuples of residues; None over Q
    guide_prime: int = None

    def __contains__(self, x):
        return bool(is_nijenhuis_element(self.ctx, x))


def reduce_context(ctx, p):
    """The same operator and representation read over F_p (denominators prime to p)."""
    from .representations import BiRepresentation, Representation
    from .relative_rb import RelRBContext
    f = GF(p)
    try:
        red = lambda a: coerce(a, f)
        alg = FDAlgebra(ctx.alg.dim, f, red(ctx.alg.c), labels=ctx.alg.labels, name=ctx.alg.name)
        if ctx.species == "jj":
            rep = Representation(alg, red(ctx.rho), ctx.v_dim)
        else:
            rep = BiRepresentation(alg, red(ctx.rho), red(ctx.mu), ctx.v_dim)
        return RelRBContext(alg, rep, red(ctx.t))
    except ZeroDivisionError as exc:
        raise PreconditionError(f"cannot reduce mod {p}: {exc}") from None


def _enumerate_elements(ctx):
    f = ctx.field
    out = []
    for idx in np.ndindex(*(f.p,) * ctx.a_dim):
        if is_nijenhuis_element(ctx, list(idx)):
            out.append(tuple(int(i) for i in idx))
    return tuple(out)


def nijenhuis_set(ctx, guide_prime=5):
    """Over F_p every element is tested. Over Q the set is not a subspace, so only
    membership is offered, together with the F_p list of the reduced operator."""
    _require_rb(ctx)
    if ctx.field.p is not None:
        return NijenhuisSet(ctx, _enumerate_elements(ctx), ctx.field.p)
    try:
        guide = _enumerate_elements(reduce_context(ctx, guide_prime))
    except PreconditionError:
        guide = None
    return NijenhuisSet(ctx, guide, guide_prime if guide is not None else None)


def conjugators(ctx, x, t):
    t = ctx.field(t)
    ida, idv = identity(ctx.a_dim, ctx.field), identity(ctx.v_dim, ctx.field)
    return ida + t * theta_a(ctx, x), idv + t * theta_v(ctx, x)


def trivial_deformation(ctx, x, t, cross_check=True):
    """T_t = (Id + t theta_A)^-1 T (Id + t theta_V) for a Nijenhuis element x.

    With cross_check the result is compared against T - t partial(x), where the
    coboundary comes from the cochain complex, and against the operator identity.
    """
    require(is_nijenhuis_element(ctx, x), PreconditionError, "x is not a Nijenhuis element")
    t = ctx.field(t)
    phi_a, phi_v = conjugators(ctx, x, t)
    try:
        inv = invert(phi_a)
    except SingularMatrixError:
        raise SingularParameter(t) from None
    tt = inv @ ctx.t @ phi_v
    if cross_check:
        from .cohomology import ComplexContext, coboundary_map
        dx = coboundary_map(ComplexContext(ctx), x)
        if not bool(np.all(tt == ctx.t - t * dx)):
            raise TheoremViolation(f"conjugated operator differs from T - t partial(x) at t = {t}")
        chk = is_relative_rb(ctx.with_operator(tt))
        if not chk:
            raise TheoremViolation(f"trivial deformation at t = {t} is not Rota-Baxter", chk)
        chk = is_rb_morphism(MorphismPair(phi_a, phi_v), ctx.with_operator(tt), ctx)
        if not chk:
            raise TheoremViolation(f"conjugators do not form a morphism at t = {t}", chk)
    return tt


# -- deformations of a JJ multiplication -----------------------------------------------------

@dataclass(frozen=True, eq=False)
class MultDeformation:
    alg: FDAlgebra
    psi: np.ndarray

    def __post_init__(self):
        psi = coerce(self.psi, self.alg.field)
        if psi.shape != self.alg.c.shape:
            raise DimensionError(f"psi has shape {psi.shape}, expected {self.alg.c.shape}")
        object.__setattr__(self, "psi", psi)


def _cyclic(t):
    return t + np.einsum("jkil->ijkl", t) + np.einsum("kijl->ijkl", t)


def cocycle_defect(c, psi):
    """x*psi(y,z) + psi(x, y*z), summed cyclically."""
    a = np.einsum("yzm,xmk->xyzk", psi, c)
    b = np.einsum("yzm,xmk->xyzk", c, psi)
    return _cyclic(a + b)


def _require_jj(alg):
    require(check_structure(alg, "jacobi_jordan"), NotJacobiJordan, "not a Jacobi-Jordan algebra")


def generates_mult_deformation(md):
    _require_jj(md.alg)
    psi, fmt = md.psi, md.alg.fmt
    return all_of(tensor_check(psi - np.einsum("jik->ijk", psi), 2, "psi is symmetric", fmt),
                  tensor_check(jacobian_tensor(psi), 3, "psi satisfies the Jacobi identity", fmt),
                  tensor_check(cocycle_defect(md.alg.c, psi), 3, "psi is a 2-cocycle", fmt))


def generates_mult_deformation_polynomial(md):
    _require_jj(md.alg)
    return _structure_pencil_check(md.alg.c, md.psi, "jj", md.alg.fmt)


def delta1(alg, n):
    """delta^1 N (x, y) = x N(y) + N(x) y - N(xy); also the deformed product x ._N y."""
    n = coerce(n, alg.field)
    c = alg.c
    return (np.einsum("qj,iqk->ijk", n, c) + np.einsum("pi,pjk->ijk", n, c)
            - np.einsum("ijm,km->ijk", c, n))


def mult_deformation_equivalence(alg, psi1, psi2, n):
    """Id + tN takes (A, * + t psi2) to (A, * + t psi1), decided by its three conditions."""
    psi1, psi2 = coerce(psi1, alg.field), coerce(psi2, alg.field)
    n = coerce(n, alg.field)
    for p in (psi1, psi2):
        require(generates_mult_deformation(MultDeformation(alg, p)), PreconditionError,
                "input does not generate a deformation")
    fmt = alg.fmt
    nn_c = np.einsum("pi,qj,pqk->ijk", n, n, alg.c)
    psi1_mixed = np.einsum("qj,iqk->ijk", n, psi1) + np.einsum("pi,pjk->ijk", n, psi1)
    return all_of(
        tensor_check(psi2 - psi1 - delta1(alg, n), 2, "psi2 - psi1 = delta1(N)", fmt),
        tensor_check(psi1_mixed - np.einsum("ijm,km->ijk", psi2, n) + nn_c, 2,
                     "psi1(x, Ny) + psi1(Nx, y) = N psi2(x, y) - Nx * Ny", fmt),
        tensor_check(np.einsum("pi,qj,pqk->ijk", n, n, psi1), 2, "psi1(Nx, Ny) = 0", fmt))


def intertwining_polynomial(alg, psi_from, psi_to, n):
    """Coefficients in t of (Id+tN)(mu_from(x,y)) - mu_to((Id+tN)x, (Id+tN)y)."""
    f = alg.field
    phi = [identity(alg.dim, f), coerce(n, f)]
    mu_from = [alg.c, coerce(psi_from, f)]
    mu_to = [alg.c, coerce(psi_to, f)]
    lhs = _pmul(lambda m, a: np.einsum("ijm,km->ijk", m, a), mu_from, phi)
    first = _pmul(lambda a, m: np.einsum("pi,pjk->ijk", a, m), phi, mu_to)
    rhs = _pmul(lambda b, m: np.einsum("qj,iqk->ijk", b, m), phi, first)
    return _psub(lhs, rhs)


def intertwines(alg, psi_from, psi_to, n):
    return _poly_check(intertwining_polynomial(alg, psi_from, psi_to, n), 2,
                       "Id + tN is a morphism", alg.fmt)


# -- Nijenhuis operators -----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NijenhuisCandidate:
    alg: FDAlgebra
    n: np.ndarray

    def __post_init__(self):
        n = coerce(self.n, self.alg.field)
        if n.shape != (self.alg.dim, self.alg.dim):
            raise DimensionError(f"N has shape {n.shape}, expected a square map on A")
        object.__setattr__(self, "n", n)


def nijenhuis_defect(alg, n):
    lhs = np.einsum("pi,qj,pqk->ijk", n, n, alg.c)
    return lhs - np.einsum("ijm,km->ijk", delta1(alg, n), n)


def is_nijenhuis_operator(nc):
    return tensor_check(nijenhuis_defect(nc.alg, nc.n), 2, "Nijenhuis identity", nc.alg.fmt)


def is_weight_rb_minus_one(nc):
    return is_rota_baxter_weight(nc.alg, nc.n, -1)


def deformed_algebra(nc, species):
    """A_N with product N(x)y + xN(y) - N(xy); raises if a stated consequence fails."""
    kind = SPECIES_KIND[species]
    require(check_structure(nc.alg, kind), PreconditionError, f"algebra fails {kind}")
    require(is_nijenhuis_operator(nc), PreconditionError, "not a Nijenhuis operator")
    a_n = FDAlgebra(nc.alg.dim, nc.alg.field, delta1(nc.alg, nc.n), labels=nc.alg.labels,
                    name=f"{nc.alg.name}_N" if nc.alg.name else "")
    chk = check_structure(a_n, kind)
    if not chk:
        raise TheoremViolation(f"deformed algebra fails {kind}", chk)
    chk = is_algebra_morphism(nc.n, a_n, nc.alg)
    if not chk:
        raise TheoremViolation("N is not a morphism from the deformed algebra", chk)
    return a_n


def build_NT(ctx, lam=0):
    """(a + v) -> (Tv, -lam v) on A (+) V."""
    n, m = ctx.a_dim, ctx.v_dim
    f = ctx.field
    out = zeros((n + m, n + m), f)
    out[:n, n:] = ctx.t
    out[n:, n:] = -f(lam) * identity(m, f)
    return out


def nt_is_nijenhuis(ctx, lam=0):
    s = semidirect_product(ctx.alg, ctx.rep)
    return is_nijenhuis_operator(NijenhuisCandidate(s, build_NT(ctx, lam)))


def composition_defect(ctx, n):
    """N((NT)u.Tv + Tu.(NT)v) - N(T(rho(NTu)v + mu(NTv)u)) - N(NT(rho(Tu)v + mu(Tv)u))."""
    t = ctx.t
    nt = n @ t
    lhs = _product_images(ctx, nt, t) + _product_images(ctx, t, nt)
    rhs = (np.einsum("ijb,kb->ijk", _inner(nt, ctx.rho, ctx.mu), t)
           + np.einsum("ijb,kb->ijk", _inner(t, ctx.rho, ctx.mu), nt))
    return np.einsum("ijm,km->ijk", lhs - rhs, n)


def rb_nijenhuis_composition_check(ctx, n):
    """Is NT an operator? Decided by the composition identity; the direct check must agree."""
    n = coerce(n, ctx.field)
    _require_rb(ctx)
    require(is_nijenhuis_operator(NijenhuisCandidate(ctx.alg, n)), PreconditionError,
            "not a Nijenhuis operator")
    chk = tensor_check(composition_defect(ctx, n), 2, "composition identity for NT",
                       ctx.alg.fmt)
    direct = is_relative_rb(ctx.with_operator(n @ ctx.t))
    if bool(chk) != bool(direct):
        raise TheoremViolation("composition identity and direct check disagree on NT", direct)
    return chk
