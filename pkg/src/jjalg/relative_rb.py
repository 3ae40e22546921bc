"""Relative Rota-Baxter operators T: V -> A for JJ and left pre-JJ algebras.

One identity covers both species:
    T(u).T(v) = T(rho(Tu)v + mu(Tv)u),
with mu = rho for a JJ representation.
"""
from dataclasses import dataclass

import numpy as np

from .algebras import (FDAlgebra, check_structure, is_algebra_morphism, is_rota_baxter_weight,
                       require, sub_adjacent, tensor_check)
from .errors import (PASS, Check, DimensionError, InvalidRepresentation, NotRelativeRB,
                     PreconditionError, SingularMatrixError, TheoremViolation, all_of)
from .linalg import coerce, identity, invert, zeros
from .representations import (BiRepresentation, Representation, extended_representation, is_valid,
                              semidirect_product, sum_representation)


@dataclass(frozen=True, eq=False)
class RelRBContext:
    """An algebra, a (bi)representation on V and a linear map t: V -> A.

    The representation is validated on construction unless validate=False;
    whether t is an operator is a predicate (is_relative_rb).
    """

    alg: FDAlgebra
    rep: object
    t: np.ndarray
    validate: bool = True

    def __post_init__(self):
        if self.rep.alg != self.alg:
            raise DimensionError("representation is over a different algebra")
        t = coerce(self.t, self.alg.field)
        if t.shape != (self.alg.dim, self.rep.v_dim):
            raise DimensionError(f"t has shape {t.shape}, expected {(self.alg.dim, self.rep.v_dim)}")
        object.__setattr__(self, "t", t)
        if self.validate:
            require(is_valid(self.rep), InvalidRepresentation, "invalid representation")

    @property
    def species(self):
        return self.rep.species

    @property
    def field(self):
        return self.alg.field

    @property
    def a_dim(self):
        return self.alg.dim

    @property
    def v_dim(self):
        return self.rep.v_dim

    @property
    def rho(self):
        return self.rep.rho

    @property
    def mu(self):
        return self.rep.mu

    def with_operator(self, t):
        return RelRBContext(self.alg, self.rep, t, validate=False)


def _inner(t, rho, mu):
    """W[i,j] = rho(T e_i) e_j + mu(T e_j) e_i."""
    return np.einsum("pi,pbj->ijb", t, rho) + np.einsum("qj,qbi->ijb", t, mu)


def _product_images(ctx, t1, t2):
    """P[i,j] = T1(e_i) . T2(e_j)."""
    return np.einsum("pi,qj,pqk->ijk", t1, t2, ctx.alg.c)


def rb_defect(ctx, t=None):
    """D[i,j] = T(e_i)T(e_j) - T(rho(Te_i)e_j + mu(Te_j)e_i)."""
    t = ctx.t if t is None else coerce(t, ctx.field)
    rhs = np.einsum("ijb,kb->ijk", _inner(t, ctx.rho, ctx.mu), t)
    return _product_images(ctx, t, t) - rhs


def is_relative_rb(ctx):
    return tensor_check(rb_defect(ctx), 2, "relative Rota-Baxter identity", ctx.alg.fmt)


def satisfies_scaled_rb(ctx, k):
    """k T(u)T(v) = T(rho(Tu)v + mu(Tv)u): the identity up to a scalar coefficient."""
    k = ctx.field(k)
    t = ctx.t
    rhs = np.einsum("ijb,kb->ijk", _inner(t, ctx.rho, ctx.mu), t)
    return tensor_check(k * _product_images(ctx, t, t) - rhs, 2,
                        f"Rota-Baxter identity scaled by {k}", ctx.alg.fmt)


def projection_operator(alg, rep, scale=1):
    """The projection A (+) V -> A, against the extended representation on A (+) V."""
    ext = extended_representation(alg, rep)
    t = zeros((alg.dim, alg.dim + rep.v_dim), alg.field)
    for i in range(alg.dim):
        t[i, i] = alg.field(scale)
    return RelRBContext(alg, ext, t)


def graph_subalgebra_check(ctx):
    """Is {(Tv, v)} closed under the semidirect product? Computed inside A x| V."""
    s = semidirect_product(ctx.alg, ctx.rep)
    n, m = ctx.a_dim, ctx.v_dim
    g = np.concatenate([ctx.t, identity(m, ctx.field)], axis=0)   # columns (T e_u, e_u)
    prods = np.einsum("pi,qj,pqk->ijk", g, g, s.c)
    a_part, v_part = prods[..., :n], prods[..., n:]
    off = a_part - np.einsum("kb,ijb->ijk", ctx.t, v_part)
    return tensor_check(off, 2, "graph closed under the semidirect product", ctx.alg.fmt)


def lift_operator(ctx):
    """T^(a + v) = Tv on A (+) V."""
    n, m = ctx.a_dim, ctx.v_dim
    hat = zeros((n + m, n + m), ctx.field)
    hat[:n, n:] = ctx.t
    return hat


def lift_is_rota_baxter(ctx):
    return is_rota_baxter_weight(semidirect_product(ctx.alg, ctx.rep), lift_operator(ctx), 0)


@dataclass(frozen=True, eq=False)
class InducedStructures:
    v_alg: FDAlgebra
    a_rep: object
    species: str


def induced_product(ctx, t=None):
    """Structure constants of u ._T v = rho(Tu)v + mu(Tv)u on V."""
    t = ctx.t if t is None else t
    return _inner(t, ctx.rho, ctx.mu)


def induced_actions(ctx):
    """rho_T(u)x = Tu.x - T(mu(x)u) and mu_T(u)x = x.Tu - T(rho(x)u), as (v, a, a) tensors."""
    t, c = ctx.t, ctx.alg.c
    rho_t = np.einsum("pu,pkl->ulk", t, c) - np.einsum("lb,kbu->ulk", t, ctx.mu)
    mu_t = np.einsum("pu,kpl->ulk", t, c) - np.einsum("lb,kbu->ulk", t, ctx.rho)
    return rho_t, mu_t


def induced_structures(ctx, check=True):
    require(is_relative_rb(ctx), NotRelativeRB, "not a relative Rota-Baxter operator")
    labels = tuple(f"v{k + 1}" for k in range(ctx.v_dim))
    v_alg = FDAlgebra(ctx.v_dim, ctx.field, induced_product(ctx), labels=labels)
    rho_t, mu_t = induced_actions(ctx)
    if ctx.species == "jj":
        a_rep = Representation(v_alg, rho_t, ctx.a_dim)
        kind = "jacobi_jordan"
    else:
        a_rep = BiRepresentation(v_alg, rho_t, mu_t, ctx.a_dim)
        kind = "left_prejj"
    if check:
        for what, chk in (("induced algebra", check_structure(v_alg, kind)),
                          ("induced representation", is_valid(a_rep)),
                          ("T as a morphism", is_algebra_morphism(ctx.t, v_alg, ctx.alg))):
            if not chk:
                raise TheoremViolation(f"{what} invalid for a Rota-Baxter operator", chk)
    return InducedStructures(v_alg, a_rep, ctx.species)


def induced_prejj_from_jj(ctx):
    """u.v = rho(Tu)v on V: left pre-JJ with sub-adjacent product *_T."""
    if ctx.species != "jj":
        raise PreconditionError("needs a Jacobi-Jordan context")
    require(is_relative_rb(ctx), NotRelativeRB, "not a relative Rota-Baxter operator")
    c = np.einsum("pi,pbj->ijb", ctx.t, ctx.rho)
    return FDAlgebra(ctx.v_dim, ctx.field, c, labels=tuple(f"v{k + 1}" for k in range(ctx.v_dim)))


def prejj_from_invertible_rb(ctx):
    """x.y = T(rho(x) T^-1 y) on A for an invertible operator T."""
    require(is_relative_rb(ctx), NotRelativeRB, "not a relative Rota-Baxter operator")
    tinv = invert(ctx.t)
    c = np.einsum("kb,iba,aj->ijk", ctx.t, ctx.rho, tinv)
    return FDAlgebra(ctx.a_dim, ctx.field, c, labels=ctx.alg.labels)


def rb_implies_subadjacent_rb(ctx):
    """A pre-JJ operator is also an operator for the sub-adjacent algebra and rho + mu."""
    if ctx.species != "prejj":
        raise PreconditionError("needs a pre-Jacobi-Jordan context")
    require(is_relative_rb(ctx), NotRelativeRB, "not a relative Rota-Baxter operator")
    jj = RelRBContext(sub_adjacent(ctx.alg), sum_representation(ctx.rep), ctx.t)
    chk = is_relative_rb(jj)
    if not chk:
        raise TheoremViolation("operator not Rota-Baxter over the sub-adjacent algebra", chk)
    return jj


# -- morphisms and conjugation ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MorphismPair:
    phi_a: np.ndarray
    phi_v: np.ndarray


def _intertwining(ctx, pair):
    """phi_V rho(x) = rho(phi_A x) phi_V (and the same for mu) on basis x."""
    fa, fv = pair.phi_a, pair.phi_v
    checks = []
    tags = [("rho", ctx.rho)] if ctx.species == "jj" else [("rho", ctx.rho), ("mu", ctx.mu)]
    for tag, act in tags:
        lhs = np.einsum("ab,ibc->iac", fv, act)
        rhs = np.einsum("ki,kab,bc->iac", fa, act, fv)
        checks.append(tensor_check(lhs - rhs, 1, f"phi_V {tag}(x) = {tag}(phi_A x) phi_V"))
    return all_of(*checks)


def is_rb_morphism(pair, ctx_from, ctx_to):
    """(phi_A, phi_V) from T' (ctx_from) to T (ctx_to)."""
    if ctx_from.alg != ctx_to.alg or ctx_from.rep != ctx_to.rep:
        raise DimensionError("morphisms need a shared algebra and representation")
    pair = MorphismPair(coerce(pair.phi_a, ctx_to.field), coerce(pair.phi_v, ctx_to.field))
    alg = ctx_to.alg
    return all_of(
        is_algebra_morphism(pair.phi_a, alg, alg),
        tensor_check((ctx_to.t @ pair.phi_v - pair.phi_a @ ctx_from.t).T, 1,
                     "T phi_V = phi_A T'", alg.fmt),
        _intertwining(ctx_to, pair))


def conjugate_rb(pair, ctx):
    """phi_A^-1 T phi_V for an algebra automorphism phi_A and invertible phi_V."""
    fa, fv = coerce(pair.phi_a, ctx.field), coerce(pair.phi_v, ctx.field)
    require(is_algebra_morphism(fa, ctx.alg, ctx.alg), PreconditionError, "phi_A is not a morphism")
    require(_intertwining(ctx, MorphismPair(fa, fv)), PreconditionError, "intertwining fails")
    fa_inv = invert(fa)
    invert(fv)   # raises if phi_V is singular
    return fa_inv @ ctx.t @ fv


# -- compatible pairs ----------------------------------------------------------------------

def mixed_defect(ctx, t1, t2):
    """T1(u)T2(v) + T2(u)T1(v) - T1(rho(T2u)v + mu(T2v)u) - T2(rho(T1u)v + mu(T1v)u)."""
    lhs = _product_images(ctx, t1, t2) + _product_images(ctx, t2, t1)
    rhs = (np.einsum("ijb,kb->ijk", _inner(t2, ctx.rho, ctx.mu), t1)
           + np.einsum("ijb,kb->ijk", _inner(t1, ctx.rho, ctx.mu), t2))
    return lhs - rhs


def mixed_defect_printed(ctx, t1, t2):
    """Variant with mu(T2 u)v and mu(T1 u)v in place of mu(T2 v)u and mu(T1 v)u."""
    lhs = _product_images(ctx, t1, t2) + _product_images(ctx, t2, t1)

    def inner(t):
        return np.einsum("pi,pbj->ijb", t, ctx.rho) + np.einsum("pi,pbj->ijb", t, ctx.mu)

    rhs = np.einsum("ijb,kb->ijk", inner(t2), t1) + np.einsum("ijb,kb->ijk", inner(t1), t2)
    return lhs - rhs


def _same_setting(ctx1, ctx2):
    if ctx1.alg != ctx2.alg or ctx1.rep != ctx2.rep:
        raise DimensionError("operators over different algebras or representations")


def are_compatible(ctx1, ctx2):
    """Mixed identity for an RB pair; equivalent to every pencil k1 T1 + k2 T2 being RB."""
    _same_setting(ctx1, ctx2)
    require(is_relative_rb(ctx1), NotRelativeRB, "T1 is not a Rota-Baxter operator")
    require(is_relative_rb(ctx2), NotRelativeRB, "T2 is not a Rota-Baxter operator")
    return tensor_check(mixed_defect(ctx1, ctx1.t, ctx2.t), 2, "mixed Rota-Baxter identity",
                        ctx1.alg.fmt)


def pencil_coefficients(ctx1, ctx2):
    """The k1^2, k1 k2, k2^2 coefficients of the RB defect of k1 T1 + k2 T2, by polarisation."""
    d1 = rb_defect(ctx1, ctx1.t)
    d2 = rb_defect(ctx1, ctx2.t)
    d12 = rb_defect(ctx1, ctx1.t + ctx2.t) - d1 - d2
    return d1, d12, d2


def pencil_is_rb(ctx1, ctx2):
    """Every member of the pencil is RB, decided coefficient-wise."""
    _same_setting(ctx1, ctx2)
    d1, d12, d2 = pencil_coefficients(ctx1, ctx2)
    fmt = ctx1.alg.fmt
    return all_of(tensor_check(d1, 2, "k1^2 coefficient", fmt),
                  tensor_check(d12, 2, "k1 k2 coefficient", fmt),
                  tensor_check(d2, 2, "k2^2 coefficient", fmt))


def pencil_sampled(ctx1, ctx2, ks=(-2, -1, 1, 2, 3)):
    for k1 in ks:
        for k2 in ks:
            t = ctx1.field(k1) * ctx1.t + ctx1.field(k2) * ctx2.t
            chk = is_relative_rb(ctx1.with_operator(t))
            if not chk:
                return Check(False, f"pencil member ({k1}, {k2})", chk.witness, chk.value)
    return PASS


def nijenhuis_from_compatible(ctx1, ctx2):
    """N = T1 T2^-1 for compatible operators with T2 invertible."""
    require(are_compatible(ctx1, ctx2), PreconditionError, "operators are not compatible")
    try:
        return ctx1.t @ invert(ctx2.t)
    except SingularMatrixError:
        raise SingularMatrixError("T2 is not invertible")
