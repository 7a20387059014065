"""Registry of every parametrized Rota-Baxter operator family on H4.

Families are data: each matrix entry is a rational expression in the weight
``lam`` and the family's parameters (built with sympy for readability, then
compiled once into exact polynomial-fraction evaluators).  Parameter-domain
constraints cover every denominator, so an instantiation that passes the
domain check never divides by zero.

Column order is (R(1), R(g), R(x), R(gx)); coordinates are in the basis
(1, g, x, gx).  Where a family's source lists images only on part of the
basis, the kernel determines the remaining columns; those are marked
``completed`` in the metadata.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import sympy as sp

from .errors import DomainViolation, WeightMismatch
from .field import RATIONAL, Scalar, check_modulus, reduce_scalar_mod_p
from .linops import LinearOperator
from .rb import WeightedOperator

lam, p1, p2, p3 = sp.symbols("lam p1 p2 p3")
alpha_x, alpha_gx, beta_gx = sp.symbols("alpha_x alpha_gx beta_gx")
gamma_g, gamma_gx, delta_g, delta_gx = sp.symbols("gamma_g gamma_gx delta_g delta_gx")

_ALL_SYMBOLS = (lam, p1, p2, p3, alpha_x, alpha_gx, beta_gx, gamma_g, gamma_gx, delta_g, delta_gx)
_SYM_BY_NAME = {s.name: s for s in _ALL_SYMBOLS}


def _compile_entry(expr):
    """Compile a sympy expression to (num_terms, den_terms) with Fraction coefficients."""
    num, den = sp.fraction(sp.together(sp.expand(expr)))

    def poly_terms(e):
        poly = sp.Poly(e, *_ALL_SYMBOLS)
        out = []
        for exps, coeff in poly.terms():
            out.append((tuple(exps), Fraction(int(coeff.p), int(coeff.q))))
        return out

    return poly_terms(num), poly_terms(den)


def _eval_terms(terms, vals):
    acc = Fraction(0)
    for exps, coeff in terms:
        t = coeff
        for v, e in zip(vals, exps):
            if e:
                t *= v ** e
        acc += t
    return acc


class RBFamily:
    """A named operator family: symbolic images, parameter domain, metadata."""

    def __init__(self, fid, scope, param_names, images, domain=(), source=None, meta=None):
        self.id = fid
        self.scope = scope
        self.param_names = tuple(param_names)
        self.images = images  # images[j][k]: sympy expr, column j, coordinate k
        self.source = source or {}
        self.meta = meta or {}
        # Auto-extend the domain with every non-constant denominator.
        constraints = list(domain)
        known = {sp.simplify(c) for c, _ in constraints}
        for col in images:
            for entry in col:
                den = sp.fraction(sp.together(sp.expand(entry)))[1]
                for fac in sp.factor_list(den)[1]:
                    f = sp.simplify(fac[0])
                    if f.free_symbols and f not in known and -f not in known:
                        constraints.append((f, "nonzero"))
                        known.add(f)
        self.domain = tuple(constraints)
        self._compiled = [[_compile_entry(e) for e in col] for col in images]
        self._domain_compiled = [(_compile_entry(c)[0], kind) for c, kind in self.domain]

    def domain_strings(self):
        return [f"{c} {'!=' if kind == 'nonzero' else '=='} 0" for c, kind in self.domain]

    def _values(self, lam_val, param_vals):
        vals = [Fraction(0)] * len(_ALL_SYMBOLS)
        vals[0] = lam_val
        for name, v in zip(self.param_names, param_vals):
            vals[_ALL_SYMBOLS.index(_SYM_BY_NAME[name])] = v
        return vals

    def check_domain(self, lam_val, param_vals, p=RATIONAL):
        """Evaluate the domain constraints; raises DomainViolation on failure.

        Over F_p the constraints are evaluated modulo p.
        """
        vals = self._values(lam_val, param_vals)
        for (terms, kind), (expr, _) in zip(self._domain_compiled, self.domain):
            v = _eval_terms(terms, vals)
            if p is not RATIONAL:
                num, den = v.numerator, v.denominator
                v = num * pow(den, -1, p) % p
            if kind == "nonzero" and not v:
                raise DomainViolation(f"{self.id}: constraint {expr} != 0 violated")
            if kind == "zero" and v:
                raise DomainViolation(f"{self.id}: constraint {expr} == 0 violated")

    def instantiate(self, weight, params=()):
        """Concrete WeightedOperator at the given weight and parameter scalars.

        All scalars must share one field.  Over F_p the entries are evaluated
        exactly over Q on residue representatives and reduced mod p.
        """
        params = tuple(params)
        if len(params) != len(self.param_names):
            raise DomainViolation(
                f"{self.id}: expected parameters {self.param_names}, got {len(params)}"
            )
        p = weight.p
        for s in params:
            if s.p != p:
                raise DomainViolation(f"{self.id}: parameter field differs from weight field")
        if not weight.v:
            raise WeightMismatch("weight must be nonzero")
        to_frac = (lambda s: s.v) if p is RATIONAL else (lambda s: Fraction(s.v))
        lam_val = to_frac(weight)
        param_vals = [to_frac(s) for s in params]
        self.check_domain(lam_val, param_vals, p)
        vals = self._values(lam_val, param_vals)
        cols = []
        for col in self._compiled:
            out = []
            for num_terms, den_terms in col:
                num = _eval_terms(num_terms, vals)
                den = _eval_terms(den_terms, vals)
                if not den:
                    raise DomainViolation(f"{self.id}: denominator vanished")
                v = num / den
                if p is RATIONAL:
                    out.append(Scalar(v))
                else:
                    out.append(reduce_scalar_mod_p(Scalar(v), p))
            cols.append(out)
        return WeightedOperator(LinearOperator(cols, p), weight)

    def to_json(self):
        return {
            "id": self.id,
            "params": list(self.param_names),
            "domain": self.domain_strings(),
            "images": [[str(sp.together(e)) for e in col] for col in self.images],
            "source": self.source,
        }

    def __repr__(self):
        return f"RBFamily({self.id})"


def _fam(fid, scope, params, cols, domain=(), source=None, **meta):
    images = [[sp.sympify(e) for e in col] for col in cols]
    return RBFamily(fid, scope, params, images, domain, source, meta)


L = lam  # shorthand in the tables below
Z4 = [0, 0, 0, 0]


def _build_ma():
    fams = []
    fams.append(_fam("ma-a", "ma", (), [Z4, Z4, [0, 0, -L, 0], [0, 0, 0, -L]],
                     source={"section": "intro", "item": "a"}))
    fams.append(_fam("ma-b", "ma", (), [[-L, 0, 0, 0], [0, -L, 0, 0], Z4, Z4],
                     source={"section": "intro", "item": "b"}))
    fams.append(_fam("ma-c", "ma", (),
                     [[-L, 0, 0, 0], [0, -L, 0, 0], [0, 0, -L, 0], [0, 0, 0, -L]],
                     source={"section": "intro", "item": "c"}, trivial=True))
    fams.append(_fam(
        "ma-d", "ma", ("p1", "p2", "p3"),
        [Z4,
         [-p1, p1, -(L + p1) * (L + p1 + p2) / p3, (L + p1) * (L + p2) / p3],
         [-p3, p3, -(2 * L + p1 + p2), L + p2],
         [-p3, p3, -(L + p1 + p2), p2]],
        domain=[(p3, "nonzero")],
        source={"section": "intro", "item": "d"}))
    fams.append(_fam(
        "ma-e", "ma", ("p1", "p2", "p3"),
        [[-L, 0, 0, 0],
         [L + p1, p1, -(L + p1) * (L + p1 + p2) / p3, (L + p1) * (L + p2) / p3],
         [p3, p3, -(2 * L + p1 + p2), L + p2],
         [p3, p3, -(L + p1 + p2), p2]],
        domain=[(p3, "nonzero")],
        source={"section": "intro", "item": "e"}))
    fams.append(_fam(
        "ma-f", "ma", ("p1", "p2"),
        [[-L, 0, 0, 0],
         [L, 0, p1, p1 * p2 / (L + p2)],
         [0, 0, -(L + p2), -p2],
         [0, 0, L + p2, p2]],
        domain=[(L + p2, "nonzero")],
        source={"section": "intro", "item": "f"}))
    fams.append(_fam(
        "ma-g", "ma", ("p1", "p2"),
        [[-L, 0, 0, 0],
         [L, 0, L * (L + p1) / p2, L * (L + p1) / p2],
         [-p2, -p2, -(2 * L + p1), -(L + p1)],
         [p2, p2, L + p1, p1]],
        domain=[(p2, "nonzero")],
        source={"section": "intro", "item": "g"}))
    fams.append(_fam(
        "ma-h", "ma", ("p1", "p2"),
        [[L / 2, -L / 2, p1, p2],
         [L / 2, -L / 2, -p2, p1],
         [0, 0, -L / 2, -L / 2],
         [0, 0, -L / 2, -L / 2]],
        source={"section": "intro", "item": "h"},
        rb_iff="p1 = 0"))
    return fams


def _build_theorems():
    fams = []

    # kernel <1-g, x, gx>: R(1) = R(g), R(x) = R(gx) = 0
    ker = "<1-g,x,gx>"
    for fid, col_g, params in [
        ("ker3-1g.1", [-L, 0, 0, 0], ()),
        ("ker3-1g.2", [-L / 2, -L / 2, gamma_g, delta_g], ("gamma_g", "delta_g")),
        ("ker3-1g.3", [L / 2, -L / 2, gamma_g, delta_g], ("gamma_g", "delta_g")),
    ]:
        fams.append(_fam(fid, "theorems", params, [col_g, col_g, Z4, Z4],
                         source={"section": "ker3", "item": fid.split(".")[1]},
                         kernel=ker, completed=["R(1)", "R(x)", "R(gx)"],
                         reduced={"gamma_g": 0, "delta_g": 0}))

    # kernel <1, x, gx>: R(1) = R(x) = R(gx) = 0
    ker = "<1,x,gx>"
    for fid, col_g in [
        ("ker3-1xgx.1a", [-L, -L, gamma_g, delta_g]),
        ("ker3-1xgx.1b", [L, -L, gamma_g, delta_g]),
    ]:
        fams.append(_fam(fid, "theorems", ("gamma_g", "delta_g"),
                         [Z4, col_g, Z4, Z4],
                         source={"section": "ker3", "item": fid.split(".")[1]},
                         kernel=ker, completed=["R(1)", "R(x)", "R(gx)"],
                         reduced={"gamma_g": 0, "delta_g": 0}))

    # kernel <1, g, x-gx>: R(1) = R(g) = 0, R(x) = R(gx)
    ker = "<1,g,x-gx>"
    for fid, col_gx in [
        ("ker3-1g-xgx.1a", [alpha_gx, -alpha_gx, gamma_gx, -(L + gamma_gx)]),
        ("ker3-1g-xgx.1b", [alpha_gx, alpha_gx, gamma_gx, -(L + gamma_gx)]),
    ]:
        fams.append(_fam(fid, "theorems", ("alpha_gx", "gamma_gx"),
                         [Z4, Z4, col_gx, col_gx],
                         source={"section": "ker3", "item": fid.split(".")[1]},
                         kernel=ker, completed=["R(1)", "R(g)", "R(x)"]))

    # kernel <1, g>: R(1) = R(g) = 0
    ker = "<1,g>"
    for fid, col_x, col_gx in [
        ("ker2-1g.1a", [alpha_x, alpha_x, -L, 0], [alpha_x, alpha_x, 0, -L]),
        ("ker2-1g.1b", [alpha_x, -alpha_x, -L, 0], [-alpha_x, alpha_x, 0, -L]),
        ("ker2-1g.1c", [alpha_x, -alpha_x, -L, 0], [alpha_x, -alpha_x, 0, -L]),
        ("ker2-1g.1d", [alpha_x, alpha_x, -L, 0], [-alpha_x, -alpha_x, 0, -L]),
    ]:
        fams.append(_fam(fid, "theorems", ("alpha_x",), [Z4, Z4, col_x, col_gx],
                         source={"section": "ker2", "item": fid.split(".")[1]},
                         kernel=ker, completed=["R(1)", "R(g)"]))

    # kernel <1, x>: R(1) = R(x) = 0
    ker = "<1,x>"
    for fid, col_g, col_gx in [
        ("ker2-1x.1a", [-L, -L, gamma_g, 0], [0, 0, L, -L]),
        ("ker2-1x.1b", [L, -L, gamma_g, 0], [0, 0, -L, -L]),
        ("ker2-1x.1c", [-L, -L, gamma_g, 0], [0, 0, -L, -L]),
        ("ker2-1x.1d", [L, -L, gamma_g, 0], [0, 0, L, -L]),
    ]:
        fams.append(_fam(fid, "theorems", ("gamma_g",), [Z4, col_g, Z4, col_gx],
                         source={"section": "ker2", "item": fid.split(".")[1]},
                         kernel=ker, completed=["R(1)", "R(x)"],
                         reduced={"gamma_g": 0}))

    # kernel <1, x-gx>: R(1) = 0, R(x) = R(gx)
    ker = "<1,x-gx>"
    for fid, col_g in [
        ("ker2-1xmgx.1a", [-L, -L, gamma_g, -gamma_g]),
        ("ker2-1xmgx.1b", [L, -L, gamma_g, -gamma_g]),
    ]:
        col_gx = [0, 0, -L / 2, -L / 2]
        fams.append(_fam(fid, "theorems", ("gamma_g",), [Z4, col_g, col_gx, col_gx],
                         source={"section": "ker2", "item": fid.split(".")[1]},
                         kernel=ker, completed=["R(1)", "R(x)"],
                         reduced={"gamma_g": 0}))

    # kernel <x, gx>: R(x) = R(gx) = 0
    ker = "<x,gx>"
    for fid, col_1, col_g, params in [
        ("ker2-xgx.1", [-L, 0, 0, 0], [0, -L, gamma_gx, delta_gx], ("gamma_gx", "delta_gx")),
        ("ker2-xgx.2a", [-3 * L / 2, -L / 2, gamma_gx, delta_gx],
         [L / 2, -L / 2, gamma_gx, delta_gx], ("gamma_gx", "delta_gx")),
        ("ker2-xgx.2b", [-3 * L / 2, L / 2, -gamma_gx, -delta_gx],
         [-L / 2, -L / 2, gamma_gx, delta_gx], ("gamma_gx", "delta_gx")),
    ]:
        fams.append(_fam(fid, "theorems", params, [col_1, col_g, Z4, Z4],
                         source={"section": "ker2", "item": fid.split(".")[1]},
                         kernel=ker, completed=["R(x)", "R(gx)"],
                         reduced={"gamma_gx": 0, "delta_gx": 0}))

    # kernel <1-g, x-gx>: R(1) = R(g), R(x) = R(gx)
    ker = "<1-g,x-gx>"
    half = [0, 0, -L / 2, -L / 2]
    fams.append(_fam("ker2-1mg-xmgx.1", "theorems", ("gamma_g",),
                     [[-L / 2, -L / 2, gamma_g, -gamma_g],
                      [-L / 2, -L / 2, gamma_g, -gamma_g], half, half],
                     source={"section": "ker2", "item": "1"},
                     kernel=ker, completed=["R(1)", "R(x)"],
                     reduced={"gamma_g": 0}))
    fams.append(_fam("ker2-1mg-xmgx.2", "theorems", ("gamma_g",),
                     [[L / 2, -L / 2, gamma_g, -gamma_g],
                      [L / 2, -L / 2, gamma_g, -gamma_g], half, half],
                     source={"section": "ker2", "item": "2"},
                     kernel=ker, completed=["R(1)", "R(x)"],
                     reduced={"gamma_g": 0}))
    col_gx = [-beta_gx, beta_gx, gamma_gx, -(L + gamma_gx)]
    fams.append(_fam("ker2-1mg-xmgx.3", "theorems", ("beta_gx", "gamma_gx"),
                     [[-L, 0, 0, 0], [-L, 0, 0, 0], col_gx, col_gx],
                     source={"section": "ker2", "item": "3"},
                     kernel=ker, completed=["R(1)", "R(x)"]))

    # image <1-g, x, gx> (kernel dimension 1)
    img = "<1-g,x,gx>"
    fams.append(_fam("ker1-im1mg.1", "theorems", ("gamma_g", "delta_g"),
                     [[-L / 2, L / 2, gamma_g, delta_g],
                      [L / 2, -L / 2, gamma_g, delta_g],
                      [0, 0, -L, 0], [0, 0, 0, -L]],
                     source={"section": "ker1", "item": "1"}, image=img,
                     reduced={"gamma_g": 0, "delta_g": 0}))
    fams.append(_fam("ker1-im1mg.2", "theorems", ("gamma_g", "delta_g"),
                     [[L / 2, -L / 2, gamma_g, delta_g],
                      [L / 2, -L / 2, -gamma_g, -delta_g],
                      [0, 0, -L, 0], [0, 0, 0, -L]],
                     source={"section": "ker1", "item": "2"}, image=img,
                     reduced={"gamma_g": 0, "delta_g": 0}))
    fams.append(_fam("ker1-im1mg.3", "theorems", (),
                     [Z4, [L, -L, 0, 0], [0, 0, -L, 0], [0, 0, 0, -L]],
                     source={"section": "ker1", "item": "3"}, image=img))

    # image <1, x, gx>
    img = "<1,x,gx>"
    for fid, g0 in [("ker1-im1xgx.1a", -L), ("ker1-im1xgx.1b", L)]:
        fams.append(_fam(fid, "theorems", ("gamma_g", "delta_g"),
                         [[-L, 0, 0, 0], [g0, 0, gamma_g, delta_g],
                          [0, 0, -L, 0], [0, 0, 0, -L]],
                         source={"section": "ker1", "item": fid.split(".")[1]},
                         image=img, reduced={"gamma_g": 0, "delta_g": 0}))

    # image <1, g, x-gx>
    img = "<1,g,x-gx>"
    for fid, s in [("ker1-im1g.1a", -1), ("ker1-im1g.1b", 1)]:
        fams.append(_fam(fid, "theorems", ("beta_gx", "gamma_gx"),
                         [[-L, 0, 0, 0], [0, -L, 0, 0],
                          [s * beta_gx, beta_gx, gamma_gx, -gamma_gx],
                          [s * beta_gx, beta_gx, gamma_gx + L, -(gamma_gx + L)]],
                         source={"section": "ker1", "item": fid.split(".")[1]},
                         image=img))
    fams.append(_fam("ker1-im1g.2a", "theorems", ("gamma_g",),
                     [[-3 * L / 2, -L / 2, gamma_g, -gamma_g],
                      [L / 2, -L / 2, -gamma_g, gamma_g],
                      [0, 0, -L / 2, L / 2], [0, 0, L / 2, -L / 2]],
                     source={"section": "ker1", "item": "2a"}, image=img,
                     reduced={"gamma_g": 0}))
    fams.append(_fam("ker1-im1g.2b", "theorems", ("gamma_g",),
                     [[-3 * L / 2, L / 2, gamma_g, -gamma_g],
                      [-L / 2, -L / 2, gamma_g, -gamma_g],
                      [0, 0, -L / 2, L / 2], [0, 0, L / 2, -L / 2]],
                     source={"section": "ker1", "item": "2b"}, image=img))

    # kernel 0
    fams.append(_fam("ker0.1", "theorems", (),
                     [[-L, 0, 0, 0], [0, -L, 0, 0], [0, 0, -L, 0], [0, 0, 0, -L]],
                     source={"section": "ker0", "item": "1"}, kernel="0", trivial=True))
    fams.append(_fam("ker0.2a", "theorems", ("gamma_g", "delta_g"),
                     [[-3 * L / 2, -L / 2, gamma_g, delta_g],
                      [L / 2, -L / 2, -gamma_g, -delta_g],
                      [0, 0, -L, 0], [0, 0, 0, -L]],
                     source={"section": "ker0", "item": "2a"}, kernel="0",
                     reduced={"gamma_g": 0, "delta_g": 0}))
    fams.append(_fam("ker0.2b", "theorems", ("gamma_g", "delta_g"),
                     [[-3 * L / 2, L / 2, gamma_g, delta_g],
                      [-L / 2, -L / 2, gamma_g, delta_g],
                      [0, 0, -L, 0], [0, 0, 0, -L]],
                     source={"section": "ker0", "item": "2b"}, kernel="0",
                     reduced={"gamma_g": 0, "delta_g": 0}))
    return fams


def _build_final():
    fams = []
    half = [0, 0, -L / 2, -L / 2]

    def add(n, cols, params=(), domain=(), **meta):
        fams.append(_fam(f"final-{n}", "final", params, cols, domain,
                         source={"section": "final", "item": str(n)}, **meta))

    add(1, [Z4, Z4, [alpha_x, alpha_x, -L, 0], [alpha_x, alpha_x, 0, -L]],
        params=("alpha_x",), domain=[(alpha_x, "nonzero")])
    add(2, [Z4, [-L, -L, 0, 0], Z4, [0, 0, -L, -L]])
    add(3, [Z4, [-L, -L, 0, 0], half, half])
    add(4, [[-L, 0, 0, 0], [0, -L, 0, 0], Z4, Z4])
    add(5, [[-3 * L / 2, -L / 2, 0, 0], [L / 2, -L / 2, 0, 0], Z4, Z4])
    add(6, [[-L / 2, -L / 2, 0, 0], [-L / 2, -L / 2, 0, 0], half, half])
    add(7, [[L / 2, -L / 2, 0, 0], [L / 2, -L / 2, 0, 0], half, half])
    add(8, [[-L, 0, 0, 0], [-L, 0, 0, 0], Z4, Z4])
    add(9, [[-L / 2, -L / 2, 0, 0], [-L / 2, -L / 2, 0, 0], Z4, Z4])
    add(10, [[L / 2, -L / 2, 0, 0], [L / 2, -L / 2, 0, 0], Z4, Z4])
    add(11, [Z4, [-L, -L, 0, 0], Z4, Z4])
    add(12, [[-L, 0, 0, 0], [-L, 0, 0, 0],
             [alpha_gx, -alpha_gx, -L, 0], [alpha_gx, -alpha_gx, 0, -L]],
        params=("alpha_gx",), domain=[(alpha_gx, "nonzero")])
    add(13, [[-L, 0, 0, 0], [0, -L, 0, 0], half, half])
    add(14, [[-L, 0, 0, 0], [0, -L, 0, 0], Z4, [0, 0, L, -L]])
    return fams


@lru_cache(maxsize=1)
def _registry():
    fams = _build_ma() + _build_theorems() + _build_final()
    by_id = {}
    for f in fams:
        assert f.id not in by_id, f"duplicate family id {f.id}"
        by_id[f.id] = f
    return by_id


def list_families(scope=None):
    """Families in a scope ("ma" | "theorems" | "final"), or all when None."""
    fams = list(_registry().values())
    if scope is None:
        return fams
    return [f for f in fams if f.scope == scope]


def get_family(fid):
    return _registry()[fid]


def instantiate(family, weight, params=()):
    if isinstance(family, str):
        family = get_family(family)
    return family.instantiate(weight, params)


def reduce_mod_p(w, p):
    """Entry-wise reduction of a rational WeightedOperator into F_p."""
    from .errors import BadReduction

    check_modulus(p)
    cols = []
    for j, col in enumerate(w.op.cols):
        out = []
        for k, e in enumerate(col):
            try:
                out.append(reduce_scalar_mod_p(e, p))
            except BadReduction:
                raise BadReduction(
                    f"entry ({k}, {j}) = {e} cannot be reduced mod {p}"
                ) from None
        cols.append(out)
    return WeightedOperator(LinearOperator(cols, p), reduce_scalar_mod_p(w.weight, p))


def sweep_instantiations(family, p, weight):
    """All instantiations of a family over F_p with domain-valid parameter tuples."""
    from itertools import product

    from .field import enumerate_field

    if isinstance(family, str):
        family = get_family(family)
    elems = enumerate_field(p)
    for params in product(elems, repeat=len(family.param_names)):
        try:
            yield params, family.instantiate(weight, params)
        except DomainViolation:
            continue


def registry_json():
    return [f.to_json() for f in list_families()]
