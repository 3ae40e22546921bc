"""Plain-text description of an algebra together with what acts on it.

    # comments run to the end of the line
    name A3
    dim 3
    field Q                  # or F<p>
    species jj               # jj | prejj-left | prejj-right | plain
    e1*e1 = e2               # unlisted products are zero
    e3*e3 = e2

    [representation]
    regular                  # or: vdim m, then "rho e1 = r1 | r2 | ..." rows
    [operator T]             # matrix rows; columns are images of basis vectors
    0 0 0
    [map N]
    [element x]
    e1 + 2e3
    [partner]                # a second algebra (dim, labels, products)
    [actions]                # rho1/rho2 (and mu1/mu2) rows, as in [representation]
    [family T]               # matrix of expressions in named parameters
    2*b, 0
    y, b
    [grid]
    y=-2..2, b=0..2

Rationals are written p/q. Over F_p entries are integers reduced mod p.
"""
from dataclasses import dataclass, field as dc_field
import re

import numpy as np

from .algebras import FDAlgebra
from .errors import ParseError
from .fields import field_from_name
from .linalg import coerce, zeros
from .representations import (BiRepresentation, MatchedPairData, Representation,
                              regular_representation)

SPECIES = ("jj", "prejj-left", "prejj-right", "plain")
REP_SPECIES = {"jj": "jj", "prejj-left": "prejj"}
_SCALAR = r"\d+(?:/\d+)?"
_TERM = re.compile(rf"\s*([+-])?\s*({_SCALAR})?\s*\*?\s*([A-Za-z_][\w']*)?\s*")
_SECTION = re.compile(r"\[\s*([a-z]+)(?:\s+([A-Za-z_]\w*))?\s*\]$")


@dataclass
class AlgebraFile:
    alg: FDAlgebra
    species: str = "plain"
    rep: object = None
    rep_regular: bool = False
    operators: dict = dc_field(default_factory=dict)    # name -> matrix (V -> A)
    maps: dict = dc_field(default_factory=dict)         # name -> matrix (A -> A)
    elements: dict = dc_field(default_factory=dict)     # name -> vector
    partner: FDAlgebra = None
    actions: dict = dc_field(default_factory=dict)      # rho1, rho2, mu1, mu2
    families: dict = dc_field(default_factory=dict)     # name -> rows of strings
    grid: str = None

    @property
    def field(self):
        return self.alg.field

    @property
    def rep_species(self):
        return REP_SPECIES.get(self.species)

    def matched_pair(self):
        a = self.actions
        return MatchedPairData(self.alg, self.partner, a.get("rho1"), a.get("rho2"),
                               a.get("mu1"), a.get("mu2"))

    def __eq__(self, other):
        if not isinstance(other, AlgebraFile):
            return NotImplemented
        same = lambda d1, d2: d1.keys() == d2.keys() and all(
            np.array_equal(np.asarray(d1[k]), np.asarray(d2[k])) for k in d1)
        return (self.alg == other.alg and self.alg.name == other.alg.name
                and self.alg.labels == other.alg.labels and self.species == other.species
                and self.rep == other.rep and self.rep_regular == other.rep_regular
                and same(self.operators, other.operators) and same(self.maps, other.maps)
                and same(self.elements, other.elements) and self.partner == other.partner
                and same(self.actions, other.actions) and self.families == other.families
                and self.grid == other.grid)


# -- parsing -------------------------------------------------------------------------------

class _Line:
    __slots__ = ("no", "text", "offset")

    def __init__(self, no, text, offset):
        self.no, self.text, self.offset = no, text, offset

    def error(self, message, col=0):
        return ParseError(message, self.no, self.offset + col + 1)


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        stripped = body.lstrip()
        if stripped:
            yield _Line(no, stripped, len(body) - len(stripped))


def _scalar(line, token, fld, col=0):
    try:
        return fld(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise line.error(f"bad coefficient {token!r} for {fld}: {exc}", col) from None


def _combination(line, text, labels, fld, col=0):
    """'2e1 - 1/2 e3' -> coefficient vector; '0' is the zero vector."""
    vec = zeros(len(labels), fld)
    if text.strip() == "0":
        return vec
    pos, first = 0, True
    while pos < len(text):
        m = _TERM.match(text, pos)
        sign, coef, lab = m.groups()
        if not lab or (not sign and not first):
            raise line.error(f"expected a term like '2e1' in {text!r}", col + pos)
        if lab not in labels:
            raise line.error(f"unknown basis element {lab!r}", col + m.start(3))
        k = _scalar(line, coef, fld, col + pos) if coef else fld.one
        vec[labels.index(lab)] += -k if sign == "-" else k
        pos, first = m.end(), False
    return vec


def _row(line, text, fld, width=None, col=0):
    parts = text.split(",") if "," in text else text.split()
    vals = [_scalar(line, p.strip(), fld, col) for p in parts]
    if width is not None and len(vals) != width:
        raise line.error(f"expected {width} entries, found {len(vals)}", col)
    return vals


def _rows_matrix(line, text, fld, size, col=0):
    rows = [r for r in text.split("|")]
    if len(rows) != size:
        raise line.error(f"expected {size} rows separated by '|', found {len(rows)}", col)
    return [_row(line, r, fld, size, col) for r in rows]


class _Header:
    def __init__(self):
        self.name, self.dim, self.field, self.species, self.labels = "", None, None, None, None
        self.products = []


def _parse_header_line(line, hdr, allow_small_char, inherit_field):
    key, _, rest = line.text.partition(" ")
    rest = rest.strip()
    if "=" in line.text and "*" in line.text.split("=", 1)[0]:
        hdr.products.append(line)
        return
    if key == "name":
        hdr.name = rest
    elif key == "dim":
        if not rest.isdigit():
            raise line.error("dim expects a nonnegative integer", 4)
        hdr.dim = int(rest)
    elif key == "field" and not inherit_field:
        try:
            hdr.field = field_from_name(rest, allow_small_char)
        except ValueError as exc:
            raise line.error(str(exc), 6) from None
    elif key == "species" and not inherit_field:
        if rest not in SPECIES:
            raise line.error(f"species must be one of {', '.join(SPECIES)}", 8)
        hdr.species = rest
    elif key == "labels":
        hdr.labels = tuple(rest.split())
    else:
        raise line.error(f"unrecognised line {line.text!r}")


def _build_algebra(hdr, fld, where):
    if hdr.dim is None:
        raise ParseError(f"missing 'dim' in {where}", 1, 1)
    labels = hdr.labels or tuple(f"e{i + 1}" for i in range(hdr.dim))
    if len(labels) != hdr.dim:
        raise ParseError(f"{len(labels)} labels for dim {hdr.dim} in {where}", 1, 1)
    c = zeros((hdr.dim,) * 3, fld)
    seen = {}
    for line in hdr.products:
        lhs, _, rhs = line.text.partition("=")
        m = re.fullmatch(r"\s*([A-Za-z_][\w']*)\s*\*\s*([A-Za-z_][\w']*)\s*", lhs)
        if not m:
            raise line.error("product lines look like 'e1*e2 = ...'")
        for g in (1, 2):
            if m.group(g) not in labels:
                raise line.error(f"unknown basis element {m.group(g)!r}", m.start(g))
        i, j = labels.index(m.group(1)), labels.index(m.group(2))
        if (i, j) in seen:
            raise line.error(f"duplicate product {m.group(1)}*{m.group(2)} "
                             f"(first given on line {seen[(i, j)]})")
        seen[(i, j)] = line.no
        c[i, j] = _combination(line, rhs, list(labels), fld, len(lhs) + 1)
    return FDAlgebra(hdr.dim, fld, c, labels=labels, name=hdr.name)


def _parse_actions(lines, alg_for, fld, allowed):
    """Lines 'rho e1 = r | r' into {tag: (dim_a, v, v) tensor}; alg_for(tag) -> (alg, vdim)."""
    out = {}
    for line in lines:
        m = re.fullmatch(r"(\w+)\s+([A-Za-z_][\w']*)\s*=\s*(.*)", line.text)
        if not m or m.group(1) not in allowed:
            raise line.error(f"expected '<{'|'.join(allowed)}> <basis> = rows'")
        tag, lab, rhs = m.groups()
        alg, vdim = alg_for(tag)
        if lab not in alg.labels:
            raise line.error(f"unknown basis element {lab!r}", m.start(2))
        t = out.setdefault(tag, zeros((alg.dim, vdim, vdim), fld))
        t[alg.labels.index(lab)] = coerce(_rows_matrix(line, rhs, fld, vdim, m.start(3)), fld)
    return out


def parse_algebra_file(text, allow_small_char=False):
    sections = [("header", None, None, [])]
    for line in _lines(text):
        if line.text.startswith("["):
            m = _SECTION.match(line.text)
            if not m:
                raise line.error(f"bad section header {line.text!r}")
            sections.append((m.group(1), m.group(2), line, []))
        else:
            sections[-1][3].append(line)

    hdr = _Header()
    for line in sections[0][3]:
        _parse_header_line(line, hdr, allow_small_char, False)
    if hdr.field is None:
        raise ParseError("missing 'field' line", 1, 1)
    fld = hdr.field
    alg = _build_algebra(hdr, fld, "header")
    af = AlgebraFile(alg, hdr.species or "plain")

    seen = set()
    rep_lines = None
    action_lines = None
    for kind, name, sline, body in sections[1:]:
        key = (kind, name)
        if key in seen:
            raise sline.error(f"duplicate section [{kind}{' ' + name if name else ''}]")
        seen.add(key)
        if kind == "representation":
            rep_lines = (sline, body)
        elif kind in ("operator", "map", "family"):
            if name is None:
                raise sline.error(f"[{kind}] needs a name, e.g. [{kind} T]")
            if kind == "family":
                af.families[name] = [[s.strip() for s in (l.text.split(",") if "," in l.text
                                                           else l.text.split())] for l in body]
                continue
            width = None
            rows = [_row(l, l.text, fld, width) for l in body]
            target = af.operators if kind == "operator" else af.maps
            target[name] = (sline, rows)
        elif kind == "element":
            if name is None or len(body) != 1:
                raise sline.error("[element x] holds one linear combination")
            af.elements[name] = _combination(body[0], body[0].text, list(alg.labels), fld)
        elif kind == "partner":
            phdr = _Header()
            for line in body:
                _parse_header_line(line, phdr, allow_small_char, True)
            af.partner = _build_algebra(phdr, fld, "[partner]")
        elif kind == "actions":
            action_lines = body
        elif kind == "grid":
            af.grid = ", ".join(l.text for l in body)
        else:
            raise sline.error(f"unknown section [{kind}]")

    if rep_lines is not None:
        af.rep, af.rep_regular = _parse_representation(af, *rep_lines)
    v_dim = af.rep.v_dim if af.rep is not None else alg.dim
    for target, cols in ((af.operators, v_dim), (af.maps, alg.dim)):
        for name, (sline, rows) in list(target.items()):
            if len(rows) != alg.dim or any(len(r) != cols for r in rows):
                raise sline.error(f"'{name}' must be a {alg.dim} x {cols} matrix")
            target[name] = coerce(rows, fld)
    if action_lines is not None:
        if af.partner is None:
            raise ParseError("[actions] needs a [partner] section", action_lines[0].no
                             if action_lines else 1, 1)
        p = af.partner
        dims = {"rho1": (alg, p.dim), "mu1": (alg, p.dim), "rho2": (p, alg.dim), "mu2": (p, alg.dim)}
        allowed = ("rho1", "rho2") if af.species == "jj" else ("rho1", "rho2", "mu1", "mu2")
        af.actions = _parse_actions(action_lines, dims.__getitem__, fld, allowed)
        for tag in allowed:
            a, v = dims[tag]
            af.actions.setdefault(tag, zeros((a.dim, v, v), fld))
    return af


def _parse_representation(af, sline, body):
    alg, fld = af.alg, af.field
    species = af.rep_species
    if species is None:
        raise sline.error(f"representations need species jj or prejj-left, not {af.species}")
    if len(body) == 1 and body[0].text == "regular":
        return regular_representation(alg, species), True
    if not body or not body[0].text.startswith("vdim"):
        raise sline.error("a representation starts with 'regular' or 'vdim <m>'")
    head = body[0]
    v = head.text[4:].strip()
    if not v.isdigit():
        raise head.error("vdim expects a nonnegative integer", 5)
    vdim = int(v)
    allowed = ("rho",) if species == "jj" else ("rho", "mu")
    acts = _parse_actions(body[1:], lambda tag: (alg, vdim), fld, allowed)
    rho = acts.get("rho", zeros((alg.dim, vdim, vdim), fld))
    if species == "jj":
        return Representation(alg, rho, vdim), False
    return BiRepresentation(alg, rho, acts.get("mu", zeros((alg.dim, vdim, vdim), fld)), vdim), False


def load(path, allow_small_char=False):
    with open(path) as fh:
        return parse_algebra_file(fh.read(), allow_small_char)


# -- serialisation --------------------------------------------------------------------------

def _fmt_scalar(a):
    return str(a)


def _fmt_combination(v, labels):
    terms = []
    for a, lab in zip(v, labels):
        if a == 0:
            continue
        s = _fmt_scalar(a)
        if s == "1":
            terms.append(("+", lab))
        elif s == "-1":
            terms.append(("-", lab))
        elif s.startswith("-"):
            terms.append(("-", f"{s[1:]}{lab}" if "/" not in s else f"{s[1:]} {lab}"))
        else:
            terms.append(("+", f"{s}{lab}" if "/" not in s else f"{s} {lab}"))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, t in terms[1:]:
        out += f" {sign} {t}"
    return out


def _fmt_rows(m):
    return " | ".join(" ".join(_fmt_scalar(a) for a in row) for row in m)


def _algebra_lines(alg, with_field, species=None):
    out = []
    if alg.name:
        out.append(f"name {alg.name}")
    out.append(f"dim {alg.dim}")
    if with_field:
        out.append(f"field {alg.field!r}")
        out.append(f"species {species}")
    if alg.labels != tuple(f"e{i + 1}" for i in range(alg.dim)):
        out.append("labels " + " ".join(alg.labels))
    for i in range(alg.dim):
        for j in range(alg.dim):
            if any(a != 0 for a in alg.c[i, j]):
                out.append(f"{alg.labels[i]}*{alg.labels[j]} = "
                           f"{_fmt_combination(alg.c[i, j], alg.labels)}")
    return out


def _action_lines(tag, t, labels):
    return [f"{tag} {labels[i]} = {_fmt_rows(t[i])}" for i in range(t.shape[0])
            if any(a != 0 for a in t[i].flat)]


def serialize(af):
    alg = af.alg
    out = _algebra_lines(alg, True, af.species)
    if af.rep is not None:
        out += ["", "[representation]"]
        if af.rep_regular:
            out.append("regular")
        else:
            out.append(f"vdim {af.rep.v_dim}")
            out += _action_lines("rho", af.rep.rho, alg.labels)
            if af.rep.species == "prejj":
                out += _action_lines("mu", af.rep.mu, alg.labels)
    for title, d in (("operator", af.operators), ("map", af.maps)):
        for name in sorted(d):
            out += ["", f"[{title} {name}]"]
            out += [" ".join(_fmt_scalar(a) for a in row) for row in d[name]]
    for name in sorted(af.elements):
        out += ["", f"[element {name}]", _fmt_combination(af.elements[name], alg.labels)]
    if af.partner is not None:
        out += ["", "[partner]"] + _algebra_lines(af.partner, False)
    if af.actions:
        out += ["", "[actions]"]
        for tag in ("rho1", "mu1", "rho2", "mu2"):
            if tag in af.actions:
                labels = alg.labels if tag.endswith("1") else af.partner.labels
                out += _action_lines(tag, af.actions[tag], labels)
    for name in sorted(af.families):
        out += ["", f"[family {name}]"] + [", ".join(r) for r in af.families[name]]
    if af.grid:
        out += ["", "[grid]", af.grid]
    return "\n".join(out) + "\n"
