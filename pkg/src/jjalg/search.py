"""Exhaustive enumeration over small prime fields.

Candidates are integer arrays of a fixed shape with entries in 0..p-1, visited in
lexicographic order of the flattened entries. The flat index k of a candidate is
its base-p numeral, so a block [k0, k1) with k0, k1 multiples of p^r is exactly
the set of candidates sharing their leading entries. Blocks are the unit of work
for the process pool and are merged back in order, so results never depend on
the worker count.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
import ast
from fractions import Fraction
import itertools
import math
import operator

import numpy as np

from .errors import BudgetExceeded, PreconditionError
from .fields import GF
from .linalg import coerce

DEFAULT_BUDGET = 10 ** 7
BLOCK = 5 ** 7


def residues(a):
    """Object array over F_p -> int64 residues."""
    return np.vectorize(int, otypes=[np.int64])(np.asarray(a, dtype=object))


# -- vectorised predicates: each returns a boolean mask over the batch -----------------------

def _square(batch, c, p):
    """S[b,i,j] = T_b(e_i) T_b(e_j), contracted one factor at a time."""
    half = np.einsum("bpi,pqk->biqk", batch, c) % p
    return np.einsum("biqk,bqj->bijk", half, batch) % p


def _rb_mask(batch, p, c, rho, mu):
    lhs = _square(batch, c, p)
    inner = (np.einsum("bpi,pmj->bijm", batch, rho) + np.einsum("bqj,qmi->bijm", batch, mu)) % p
    rhs = np.einsum("bijm,bkm->bijk", inner, batch)
    return ((lhs - rhs) % p == 0).reshape(len(batch), -1).all(axis=1)


def _nijenhuis_mask(batch, p, c):
    lhs = _square(batch, c, p)
    c_n = (np.einsum("bqj,iqk->bijk", batch, c) + np.einsum("bpi,pjk->bijk", batch, c)
           - np.einsum("ijm,bkm->bijk", c, batch)) % p
    rhs = np.einsum("bijm,bkm->bijk", c_n, batch)
    return ((lhs - rhs) % p == 0).reshape(len(batch), -1).all(axis=1)


def _weight_rb_mask(batch, p, c, lam):
    lhs = _square(batch, c, p)
    inner = (np.einsum("bpi,pjm->bijm", batch, c) + np.einsum("bqj,iqm->bijm", batch, c)
             + lam * c[None]) % p
    rhs = np.einsum("bijm,bkm->bijk", inner, batch)
    return ((lhs - rhs) % p == 0).reshape(len(batch), -1).all(axis=1)


def _anticomm(c, rho):
    prod = np.einsum("bixy,bjyz->bijxz", rho, rho)
    return np.einsum("ijm,bmxy->bijxy", c, rho) + prod + np.einsum("bjixz->bijxz", prod)


def _representation_mask(batch, p, c, a_dim, v_dim, species):
    n = len(batch)
    if species == "jj":
        rho = batch.reshape(n, a_dim, v_dim, v_dim)
        return (_anticomm(c, rho) % p == 0).reshape(n, -1).all(axis=1)
    rho = batch[:, :a_dim].reshape(n, a_dim, v_dim, v_dim)
    mu = batch[:, a_dim:].reshape(n, a_dim, v_dim, v_dim)
    star = c + np.einsum("jik->ijk", c)
    first = (_anticomm(star, rho) % p == 0).reshape(n, -1).all(axis=1)
    second = (np.einsum("bjxy,biyz->bijxz", mu, mu) + np.einsum("ijm,bmxy->bijxy", c, mu)
              + np.einsum("bjxy,biyz->bijxz", mu, rho) + np.einsum("bixy,bjyz->bijxz", rho, mu))
    return first & (second % p == 0).reshape(n, -1).all(axis=1)


def _system_mask(batch, p, fn):
    return (fn(batch) % p == 0).reshape(len(batch), -1).all(axis=1)


KERNELS = {
    "relative_rb": _rb_mask,
    "nijenhuis_operator": _nijenhuis_mask,
    "rota_baxter": _weight_rb_mask,
    "representation": _representation_mask,
    "system": _system_mask,
}


def candidates(p, entries, start, stop):
    """Rows of base-p digits (most significant first) for flat indices start..stop-1."""
    k = np.arange(start, stop, dtype=np.int64)
    powers = p ** np.arange(entries - 1, -1, -1, dtype=np.int64)
    return (k[:, None] // powers[None, :]) % p


def _run_block(job):
    kernel, p, entries, shape, start, stop, args = job
    flat = candidates(p, entries, start, stop) if stop is not None else start
    batch = flat.reshape((len(flat),) + tuple(shape))
    mask = KERNELS[kernel](batch, p, *args)
    return flat[mask]


# -- the search specification ------------------------------------------------------------

@dataclass
class SearchSpec:
    """What to enumerate.

    predicate: one of relative_rb, nijenhuis_operator, rota_baxter,
    nijenhuis_element, representation, system.
    context: relative_rb -> (alg, rep); nijenhuis_operator -> alg;
    rota_baxter -> (alg, weight); nijenhuis_element -> RelRBContext;
    representation -> (alg, v_dim, species); system -> (residual_fn, shape).
    """

    predicate: str
    context: object
    p: int = 5
    workers: int = 1
    budget: int = DEFAULT_BUDGET
    subsample: int = None       # draw this many random candidates when over budget
    seed: int = 0

    def __post_init__(self):
        GF(self.p, allow_small_char=True)     # rejects non-primes
        if self.predicate not in ("relative_rb", "nijenhuis_operator", "rota_baxter",
                                  "nijenhuis_element", "representation", "system"):
            raise ValueError(f"unknown predicate {self.predicate!r}")

    def _field_of_context(self):
        pred, ctx = self.predicate, self.context
        alg = {"relative_rb": lambda: ctx[0], "nijenhuis_operator": lambda: ctx,
               "rota_baxter": lambda: ctx[0], "nijenhuis_element": lambda: ctx.alg,
               "representation": lambda: ctx[0], "system": lambda: None}[pred]()
        return None if alg is None else alg.field

    @property
    def shape(self):
        pred, ctx = self.predicate, self.context
        if pred == "relative_rb":
            return (ctx[0].dim, ctx[1].v_dim)
        if pred == "nijenhuis_operator":
            return (ctx.dim, ctx.dim)
        if pred == "rota_baxter":
            return (ctx[0].dim, ctx[0].dim)
        if pred == "nijenhuis_element":
            return (ctx.a_dim,)
        if pred == "representation":
            alg, v, species = ctx
            return (alg.dim * (1 if species == "jj" else 2), v, v)
        return tuple(ctx[1])

    @property
    def entries(self):
        return math.prod(self.shape)

    @property
    def total(self):
        return self.p ** self.entries

    def kernel_args(self):
        pred, ctx = self.predicate, self.context
        if pred == "relative_rb":
            alg, rep = ctx
            return (residues(alg.c), residues(rep.rho), residues(rep.mu))
        if pred == "nijenhuis_operator":
            return (residues(ctx.c),)
        if pred == "rota_baxter":
            alg, lam = ctx
            return (residues(alg.c), int(alg.field(lam)))
        if pred == "representation":
            alg, v, species = ctx
            return (residues(alg.c), alg.dim, v, species)
        if pred == "system":
            return (ctx[0],)
        return None


@dataclass
class SearchResult:
    spec: SearchSpec
    solutions: list             # flat tuples of residues, lexicographically sorted
    examined: int
    exhaustive: bool
    meta: dict = dc_field(default_factory=dict)

    @property
    def count(self):
        return len(self.solutions)

    def arrays(self):
        return [np.array(s, dtype=np.int64).reshape(self.spec.shape) for s in self.solutions]

    def as_field(self):
        f = GF(self.spec.p, allow_small_char=True)
        return [coerce(a.tolist(), f) for a in self.arrays()]

    def as_set(self):
        return set(self.solutions)


def _check_field(spec):
    f = spec._field_of_context()
    if f is not None and f.p != spec.p:
        raise PreconditionError(f"context is over {f}, search is over F{spec.p}")


def _enumerate_elements(spec):
    from .deformations import is_nijenhuis_element
    sols = []
    for flat in candidates(spec.p, spec.entries, 0, spec.total):
        if is_nijenhuis_element(spec.context, flat.tolist()):
            sols.append(tuple(int(v) for v in flat))
    return SearchResult(spec, sols, spec.total, True)


def enumerate_solutions(spec):
    """All candidates satisfying the predicate, in lexicographic order."""
    _check_field(spec)
    total = spec.total
    if total > spec.budget:
        if spec.subsample is None:
            raise BudgetExceeded(total, spec.budget)
        return _enumerate_sample(spec)
    if spec.predicate == "nijenhuis_element":
        return _enumerate_elements(spec)
    args = spec.kernel_args()
    jobs = [(spec.predicate, spec.p, spec.entries, spec.shape, s, min(s + BLOCK, total), args)
            for s in range(0, total, BLOCK)]
    if spec.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            parts = list(pool.map(_run_block, jobs))
    else:
        parts = [_run_block(j) for j in jobs]
    sols = [tuple(int(v) for v in row) for part in parts for row in part]
    return SearchResult(spec, sols, total, True)


def _enumerate_sample(spec):
    """Random distinct candidates (sorted), for spaces beyond the budget."""
    if spec.predicate == "nijenhuis_element":
        raise PreconditionError("element search is never subsampled")
    if spec.subsample > spec.budget:
        raise BudgetExceeded(spec.subsample, spec.budget)
    rng = np.random.default_rng(spec.seed)
    flat = np.unique(rng.integers(0, spec.p, size=(spec.subsample, spec.entries), dtype=np.int64),
                     axis=0)
    args = spec.kernel_args()
    parts = [_run_block((spec.predicate, spec.p, spec.entries, spec.shape,
                         flat[s:s + BLOCK], None, args))
             for s in range(0, len(flat), BLOCK)]
    sols = [tuple(int(v) for v in row) for part in parts for row in part]
    return SearchResult(spec, sols, len(flat), False, {"seed": spec.seed})


# -- parametric families -----------------------------------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}


def evaluate(expr, env, field):
    """Evaluate an arithmetic expression in named parameters, exactly in the field."""
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return field(node.value)
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ValueError(f"unknown parameter {node.id!r} in {expr!r}")
            return field(env[node.id])
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ValueError("exponents must be integer literals")
                return ev(node.left) ** node.right.value
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        raise ValueError(f"unsupported syntax in {expr!r}")
    return ev(ast.parse(str(expr), mode="eval"))


def parse_grid(spec):
    """'y=-2..2, b=0..2, s=1/2|3' -> ordered {name: [values]}."""
    grid = {}
    for part in filter(None, (s.strip() for s in spec.split(","))):
        name, _, rng = part.partition("=")
        name, rng = name.strip(), rng.strip()
        if not name.isidentifier() or not rng:
            raise ValueError(f"bad grid entry {part!r}")
        if ".." in rng:
            lo, hi = (int(s) for s in rng.split(".."))
            grid[name] = list(range(lo, hi + 1))
        else:
            grid[name] = [Fraction(s) for s in rng.split("|")]
    return grid


@dataclass
class FamilyReport:
    points: list                # (params, Check)

    @property
    def failures(self):
        return [(pt, chk) for pt, chk in self.points if not chk]

    @property
    def all_pass(self):
        return not self.failures

    def summary(self):
        return f"{len(self.points) - len(self.failures)}/{len(self.points)} grid points pass"


def instantiate(family, params, field):
    """family: a callable params -> matrix, or a nested list of expression strings."""
    if callable(family):
        return coerce(family(**params), field)
    return coerce(np.vectorize(lambda e: evaluate(e, params, field), otypes=[object])(
        np.asarray(family, dtype=object)), field)


def verify_family(family, predicate, grid, field, where=None):
    """Run predicate(matrix) -> Check on every grid point (optionally filtered by where)."""
    if isinstance(grid, str):
        grid = parse_grid(grid)
    names = list(grid)
    points = []
    for values in itertools.product(*(grid[n] for n in names)):
        params = dict(zip(names, values))
        if where is not None and not where(params):
            continue
        points.append((params, predicate(instantiate(family, params, field))))
    return FamilyReport(points)
