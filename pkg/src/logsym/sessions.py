"""Session files and the expression language.

A session is a line-oriented UTF-8 file: variable/divisor/arena declarations
followed by named definitions (func, vfield, form, conn), with "#" comments.
Expressions build scalars, polynomials, log vector fields and log forms from
rationals, I, T, variables, @x basis fields, d(...) and dlog(...), with
+ - * / ^ where ^ is wedge on forms and power elsewhere (the kinds are
disjoint, so no ambiguity survives evaluation).  All operator chains,
including ^, associate left.

Errors carry 1-based line/column positions.  print_canonical emits a
deterministic text rendering with the guarantee parse(print(x)) == x.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .calculus import CalculusError, LogForm, LogVectorField, d_of_function
from .connections import Connection1
from .context import POLY, TORUS, ContextError, VarContext, make_context
from .poly import Poly, PolyError, _grlex_key
from .scalars import Scalar, ScalarError

RESERVED = {
    "vars", "divisor", "coords", "poly", "arena", "func", "vfield", "form",
    "conn", "d", "dlog", "I", "T", "torus",
}

Value = Union[Scalar, Poly, LogVectorField, LogForm]


class SessionError(ValueError):
    def __init__(self, line: int, col: int, message: str):
        super().__init__("line %d, col %d: %s" % (line, col, message))
        self.line = line
        self.col = col
        self.message = message


class ParseError(SessionError):
    """Syntax error with the token that was found and what was legal there."""

    def __init__(self, line: int, col: int, expected: str, found: str):
        self.expected = expected
        self.found = found
        super().__init__(line, col, "expected %s, found %s" % (expected, found))


class KindError(SessionError):
    """Well-formed syntax applied to the wrong kind of object."""


# -- tokenizer --------------------------------------------------------------

_SYMBOLS = "+-*/^():,@"


def _is_digit(c):
    # ASCII only: str.isdigit admits unicode digits that int() rejects
    return "0" <= c <= "9"


def _is_word(c):
    return c == "_" or "a" <= c <= "z" or "A" <= c <= "Z" or _is_digit(c)


def _tokenize(text: str, lineno: int):
    """Tokens are (kind, position, payload); kind in num|ident|sym|end."""
    out = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c in " \t":
            i += 1
            continue
        if c == "#":
            break
        col = i + 1
        if _is_digit(c):
            j = i
            while j < n and _is_digit(text[j]):
                j += 1
            out.append(("num", (lineno, col), int(text[i:j])))
            i = j
        elif _is_word(c) and not _is_digit(c):
            j = i
            while j < n and _is_word(text[j]):
                j += 1
            out.append(("ident", (lineno, col), text[i:j]))
            i = j
        elif c in _SYMBOLS:
            out.append(("sym", (lineno, col), c))
            i += 1
        else:
            raise ParseError(lineno, col, "a token", repr(c))
    out.append(("end", (lineno, len(text) + 1), ""))
    return out


# -- expression parser ------------------------------------------------------
# AST nodes are tuples (tag, pos, ...); pos = (line, col).


class _ExprParser:
    def __init__(self, tokens):
        self.toks = tokens
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def next(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect_sym(self, s):
        kind, pos, val = self.next()
        if kind != "sym" or val != s:
            raise ParseError(pos[0], pos[1], "'%s'" % s, _show(kind, val))
        return pos

    def parse_expr(self):
        node = self.parse_term()
        while True:
            kind, pos, val = self.peek()
            if kind == "sym" and val in "+-":
                self.next()
                rhs = self.parse_term()
                node = ("bin", pos, val, node, rhs)
            else:
                return node

    def parse_term(self):
        node = self.parse_factor()
        while True:
            kind, pos, val = self.peek()
            if kind == "sym" and val in "*/":
                self.next()
                rhs = self.parse_factor()
                node = ("bin", pos, val, node, rhs)
            else:
                return node

    def parse_factor(self):
        # unary sign binds looser than ^, so -x^2 means -(x^2)
        kind, pos, val = self.peek()
        if kind == "sym" and val == "-":
            self.next()
            return ("neg", pos, self.parse_factor())
        if kind == "sym" and val == "+":
            self.next()
            return self.parse_factor()
        return self.parse_power()

    def parse_power(self):
        node = self.parse_atom()
        while True:
            kind, pos, val = self.peek()
            if kind == "sym" and val == "^":
                self.next()
                rhs = self.parse_exponent()
                node = ("bin", pos, "^", node, rhs)
            else:
                return node

    def parse_exponent(self):
        # a single (possibly signed) atom: keeps ^ chains left-associative
        kind, pos, val = self.peek()
        if kind == "sym" and val == "-":
            self.next()
            return ("neg", pos, self.parse_exponent())
        return self.parse_atom()

    def parse_atom(self):
        kind, pos, val = self.next()
        if kind == "num":
            return ("num", pos, val)
        if kind == "sym" and val == "(":
            node = self.parse_expr()
            self.expect_sym(")")
            return node
        if kind == "sym" and val == "@":
            ik, ipos, name = self.next()
            if ik != "ident":
                raise ParseError(ipos[0], ipos[1], "a variable name", _show(ik, name))
            return ("at", pos, name)
        if kind == "ident":
            if val == "d" and self._at_sym("("):
                self.next()
                node = self.parse_expr()
                self.expect_sym(")")
                return ("d", pos, node)
            if val == "dlog":
                self.expect_sym("(")
                ik, ipos, name = self.next()
                if ik != "ident":
                    raise ParseError(ipos[0], ipos[1], "a variable name", _show(ik, name))
                self.expect_sym(")")
                return ("dlog", pos, name)
            return ("ident", pos, val)
        raise ParseError(pos[0], pos[1], "an expression", _show(kind, val))

    def _at_sym(self, s):
        kind, _, val = self.peek()
        return kind == "sym" and val == s

    def finish(self):
        kind, pos, val = self.peek()
        if kind != "end":
            raise ParseError(pos[0], pos[1], "end of line", _show(kind, val))


def _show(kind, val):
    if kind == "end":
        return "end of line"
    return repr(str(val))


def parse_expr_text(text: str, lineno: int = 1):
    p = _ExprParser(_tokenize(text, lineno))
    node = p.parse_expr()
    p.finish()
    return node


# -- evaluator --------------------------------------------------------------


def _kind_name(v) -> str:
    if isinstance(v, Scalar):
        return "scalar"
    if isinstance(v, Poly):
        return "function"
    if isinstance(v, LogVectorField):
        return "vector field"
    if isinstance(v, LogForm):
        return "form (degree %d)" % v.degree
    return type(v).__name__


def _as_poly(v, ctx):
    if isinstance(v, Scalar):
        return Poly.constant(ctx, v)
    if isinstance(v, Poly):
        return v
    return None


class Evaluator:
    def __init__(self, ctx: VarContext, names: Dict[str, Value]):
        self.ctx = ctx
        self.names = names

    def eval(self, node) -> Value:
        tag = node[0]
        pos = node[1]
        if tag == "num":
            return Scalar.from_int(node[2])
        if tag == "ident":
            return self._lookup(pos, node[2])
        if tag == "at":
            name = node[2]
            if name not in self.ctx.names:
                raise KindError(pos[0], pos[1], "unknown variable %r" % name)
            return LogVectorField.coordinate(self.ctx, name)
        if tag == "neg":
            v = self.eval(node[2])
            return -v
        if tag == "d":
            return self._d(pos, self.eval(node[2]))
        if tag == "dlog":
            name = node[2]
            if name not in self.ctx.names:
                raise KindError(pos[0], pos[1], "unknown variable %r" % name)
            if not self.ctx.is_divisor_index(self.ctx.index(name)):
                raise KindError(
                    pos[0], pos[1],
                    "dlog(%s) needs a divisor coordinate" % name,
                )
            return LogForm.coframe(self.ctx, name)
        if tag == "bin":
            op = node[2]
            l = self.eval(node[3])
            r = self.eval(node[4])
            return self._bin(pos, op, l, r)
        raise AssertionError(tag)

    def _lookup(self, pos, name):
        if name == "I":
            return Scalar.i_unit()
        if name == "T":
            return Scalar.two_pi_i()
        if name in self.names:
            v = self.names[name]
            if isinstance(v, Connection1):
                return v.sigma
            return v
        if name in self.ctx.names:
            return Poly.variable(self.ctx, name)
        raise KindError(pos[0], pos[1], "unknown name %r" % name)

    def _d(self, pos, v):
        p = _as_poly(v, self.ctx)
        if p is not None:
            return d_of_function(p)
        if isinstance(v, LogForm):
            return v.d()
        raise KindError(pos[0], pos[1], "cannot differentiate a %s" % _kind_name(v))

    def _bin(self, pos, op, l, r):
        try:
            if op in "+-":
                return self._addsub(pos, op, l, r)
            if op == "*":
                return self._mul(pos, l, r)
            if op == "/":
                return self._div(pos, l, r)
            if op == "^":
                return self._pow(pos, l, r)
        except (ScalarError, PolyError, CalculusError) as e:
            raise KindError(pos[0], pos[1], str(e)) from None
        raise AssertionError(op)

    def _addsub(self, pos, op, l, r):
        if isinstance(l, Scalar) and isinstance(r, Scalar):
            return l + r if op == "+" else l - r
        lp, rp = _as_poly(l, self.ctx), _as_poly(r, self.ctx)
        if lp is not None and rp is not None:
            return lp + rp if op == "+" else lp - rp
        if isinstance(l, LogVectorField) and isinstance(r, LogVectorField):
            return l + r if op == "+" else l - r
        if isinstance(l, LogForm) and isinstance(r, LogForm):
            if l.degree != r.degree:
                raise KindError(
                    pos[0], pos[1],
                    "cannot add forms of degree %d and %d" % (l.degree, r.degree),
                )
            return l + r if op == "+" else l - r
        raise KindError(
            pos[0], pos[1],
            "cannot %s %s and %s"
            % ("add" if op == "+" else "subtract", _kind_name(l), _kind_name(r)),
        )

    def _mul(self, pos, l, r):
        if isinstance(l, Scalar) and isinstance(r, Scalar):
            return l * r
        # scalar/function factors act on anything; put the plain one on the left
        if isinstance(r, (Scalar, Poly)) and not isinstance(l, (Scalar, Poly)):
            l, r = r, l
        lp = _as_poly(l, self.ctx)
        if lp is not None:
            if isinstance(r, Poly):
                return lp * r
            if isinstance(r, LogVectorField):
                return r.scale(lp)
            if isinstance(r, LogForm):
                return r.scale(lp)
        if isinstance(l, LogForm) and isinstance(r, LogForm):
            raise KindError(pos[0], pos[1], "use ^ to wedge forms")
        raise KindError(
            pos[0], pos[1],
            "cannot multiply %s by %s" % (_kind_name(l), _kind_name(r)),
        )

    def _div(self, pos, l, r):
        if isinstance(r, Scalar):
            if not r.is_unit():
                raise KindError(pos[0], pos[1], "division by a non-invertible scalar")
            inv = r.inverse()
            if isinstance(l, Scalar):
                return l * inv
            if isinstance(l, Poly):
                return l.scale(inv)
            if isinstance(l, LogVectorField):
                return l.scale(Poly.constant(self.ctx, inv))
            if isinstance(l, LogForm):
                return l.scale_scalar(inv)
        if isinstance(r, Poly):
            if not r.is_unit_monomial():
                raise KindError(
                    pos[0], pos[1], "division by a non-invertible function"
                )
            inv = r.inverse_unit()
            lp = _as_poly(l, self.ctx)
            if lp is not None:
                return lp * inv
            if isinstance(l, LogVectorField):
                return l.scale(inv)
            if isinstance(l, LogForm):
                return l.scale(inv)
        raise KindError(
            pos[0], pos[1],
            "cannot divide %s by %s" % (_kind_name(l), _kind_name(r)),
        )

    def _pow(self, pos, l, r):
        if isinstance(l, LogForm) and isinstance(r, LogForm):
            return l.wedge(r)
        if not isinstance(r, Scalar):
            raise KindError(pos[0], pos[1], "exponent must be an integer")
        e = r.rational_value()
        if e is None or e.denominator != 1:
            raise KindError(pos[0], pos[1], "exponent must be an integer")
        k = int(e)
        if isinstance(l, Scalar):
            if k < 0:
                if not l.is_unit():
                    raise KindError(pos[0], pos[1], "negative power of a non-unit")
                return l.inverse() ** (-k)
            return l ** k
        if isinstance(l, Poly):
            return l ** k
        raise KindError(pos[0], pos[1], "cannot raise a %s to a power" % _kind_name(l))


# -- session manifest -------------------------------------------------------

_DEF_KINDS = ("func", "vfield", "form", "conn")


@dataclass
class SessionManifest:
    ctx: VarContext
    divisor_poly: Optional[Poly]
    funcs: Dict[str, Poly] = field(default_factory=dict)
    vfields: Dict[str, LogVectorField] = field(default_factory=dict)
    forms: Dict[str, LogForm] = field(default_factory=dict)
    conns: Dict[str, Connection1] = field(default_factory=dict)
    order: List[Tuple[str, str]] = field(default_factory=list)

    def named(self, kind: str, name: str):
        table = {"func": self.funcs, "vfield": self.vfields,
                 "form": self.forms, "conn": self.conns}[kind]
        return table.get(name)

    def all_names(self):
        out = set()
        for _, nm in self.order:
            out.add(nm)
        return out

    def divisor_equation(self) -> Optional[Poly]:
        """The defining polynomial: declared directly, or the product of the
        divisor coordinates."""
        if self.divisor_poly is not None:
            return self.divisor_poly
        if not self.ctx.divisor:
            return None
        h = Poly.one(self.ctx)
        for i in self.ctx.divisor:
            h = h * Poly.variable(self.ctx, self.ctx.names[i])
        return h


def parse_session(text: str) -> SessionManifest:
    lines = text.split("\n")
    var_names: Optional[List[str]] = None
    vars_line = 1
    div_kind: Optional[str] = None
    div_line = 1
    div_coords: List[str] = []
    div_expr = None  # (tokens-line, text) parsed after ctx exists
    arena: Optional[str] = None
    defs: List[Tuple[int, str, str, object]] = []

    for idx, raw in enumerate(lines, start=1):
        toks = _tokenize(raw, idx)
        if toks[0][0] == "end":
            continue
        kind, pos, val = toks[0]
        if kind != "ident":
            raise ParseError(pos[0], pos[1], "a declaration or definition", _show(kind, val))
        if val == "vars":
            if var_names is not None:
                raise ParseError(pos[0], pos[1], "a single vars line", "'vars'")
            vars_line = idx
            var_names = _ident_list(toks[1:], "variable name")
            for nm in var_names:
                if nm in RESERVED:
                    raise ParseError(pos[0], pos[1], "a non-reserved name", repr(nm))
        elif val == "divisor":
            if div_kind is not None:
                raise ParseError(pos[0], pos[1], "a single divisor line", "'divisor'")
            div_line = idx
            k2, p2, v2 = toks[1]
            if k2 == "ident" and v2 == "coords":
                div_kind = "coords"
                div_coords = _ident_list(toks[2:], "divisor coordinate")
            elif k2 == "ident" and v2 == "poly":
                div_kind = "poly"
                p = _ExprParser(toks[2:])
                div_expr = (idx, p.parse_expr())
                p.finish()
            else:
                raise ParseError(p2[0], p2[1], "'coords' or 'poly'", _show(k2, v2))
        elif val == "arena":
            if arena is not None:
                raise ParseError(pos[0], pos[1], "a single arena line", "'arena'")
            k2, p2, v2 = toks[1]
            if k2 != "ident" or v2 not in (POLY, TORUS):
                raise ParseError(p2[0], p2[1], "'poly' or 'torus'", _show(k2, v2))
            arena = v2
            _expect_end(toks[2])
        elif val in _DEF_KINDS:
            k2, p2, name = toks[1]
            if k2 != "ident":
                raise ParseError(p2[0], p2[1], "a name", _show(k2, name))
            if name in RESERVED:
                raise ParseError(p2[0], p2[1], "a non-reserved name", repr(name))
            k3, p3, v3 = toks[2]
            if k3 != "sym" or v3 != ":":
                raise ParseError(p3[0], p3[1], "':'", _show(k3, v3))
            p = _ExprParser(toks[3:])
            node = p.parse_expr()
            p.finish()
            defs.append((idx, val, name, node))
        else:
            raise ParseError(
                pos[0], pos[1],
                "one of vars/divisor/arena/func/vfield/form/conn", repr(val),
            )

    if var_names is None:
        if div_kind is None and not defs:
            raise ParseError(1, 1, "a vars declaration", "empty session")
        raise ParseError(1, 1, "a vars declaration before other lines", "none")
    if arena is None:
        # coordinate divisors live naturally on the torus, general ones do not
        arena = TORUS if div_kind == "coords" else POLY
    for nm in div_coords:
        if nm not in var_names:
            raise KindError(div_line, 1, "divisor coordinate %r is not a variable" % nm)
    try:
        ctx = make_context(var_names, div_coords, arena)
    except ContextError as e:
        raise KindError(vars_line, 1, str(e)) from None

    m = SessionManifest(ctx=ctx, divisor_poly=None)
    names: Dict[str, Value] = {}
    if div_expr is not None:
        lineno, node = div_expr
        ev = Evaluator(ctx, names)
        h = _as_poly(ev.eval(node), ctx)
        if h is None or h.is_zero():
            raise KindError(lineno, 1, "divisor poly must be a nonzero function")
        m.divisor_poly = h

    for lineno, kind, name, node in defs:
        if name in ctx.names or name in names:
            raise KindError(lineno, 1, "name %r already in use" % name)
        ev = Evaluator(ctx, names)
        v = ev.eval(node)
        v = _coerce_def(lineno, kind, v, ctx)
        if kind == "func":
            m.funcs[name] = v
        elif kind == "vfield":
            m.vfields[name] = v
        elif kind == "form":
            m.forms[name] = v
        else:
            m.conns[name] = v
        names[name] = v
        m.order.append((kind, name))
    return m


def _coerce_def(lineno, kind, v, ctx):
    if kind == "func":
        p = _as_poly(v, ctx)
        if p is None:
            raise KindError(lineno, 1, "func must be a function, got %s" % _kind_name(v))
        return p
    if kind == "vfield":
        if isinstance(v, LogVectorField):
            return v
        p = _as_poly(v, ctx)
        if p is not None and p.is_zero():
            return LogVectorField.zero(ctx)
        raise KindError(lineno, 1, "vfield must be a vector field, got %s" % _kind_name(v))
    if kind == "form":
        if isinstance(v, LogForm):
            return v
        p = _as_poly(v, ctx)
        if p is not None:
            return LogForm.function(p)
        raise KindError(lineno, 1, "form must be a form, got %s" % _kind_name(v))
    # conn
    if isinstance(v, LogForm) and v.degree == 1:
        return Connection1(v)
    p = _as_poly(v, ctx)
    if p is not None and p.is_zero():
        return Connection1(LogForm.zero(ctx, 1))
    raise KindError(lineno, 1, "conn must be a degree-1 form, got %s" % _kind_name(v))


def _ident_list(toks, what):
    out = []
    for kind, pos, val in toks:
        if kind == "end":
            break
        if kind != "ident":
            raise ParseError(pos[0], pos[1], what, _show(kind, val))
        if val in out:
            raise ParseError(pos[0], pos[1], "distinct names", repr(val))
        out.append(val)
    if not out:
        raise ParseError(toks[0][1][0], toks[0][1][1], what, "end of line")
    return out


def _expect_end(tok):
    kind, pos, val = tok
    if kind != "end":
        raise ParseError(pos[0], pos[1], "end of line", _show(kind, val))


def eval_in_session(m: SessionManifest, text: str) -> Value:
    """Evaluate an expression with the session's names in scope."""
    names: Dict[str, Value] = {}
    names.update(m.funcs)
    names.update(m.vfields)
    names.update(m.forms)
    names.update(m.conns)
    node = parse_expr_text(text)
    return Evaluator(m.ctx, names).eval(node)


# -- canonical printer ------------------------------------------------------


def _frac(a: Fraction) -> str:
    return str(a)


def _scalar_piece(k: int, a: Fraction, b: Fraction):
    """One T-power term as (negative?, positive-form text)."""
    if b == 0:
        neg = a < 0
        base = _frac(-a if neg else a)
    elif a == 0:
        neg = b < 0
        bb = -b if neg else b
        base = "I" if bb == 1 else _frac(bb) + "*I"
    else:
        neg = False
        ib = "I" if abs(b) == 1 else _frac(abs(b)) + "*I"
        base = "(%s %s %s)" % (_frac(a), "+" if b > 0 else "-", ib)
    if k == 0:
        t = ""
    elif k == 1:
        t = "T"
    else:
        t = "T^%d" % k
    if not t:
        return neg, base
    if base == "1":
        return neg, t
    return neg, base + "*" + t


def scalar_text(s: Scalar) -> str:
    if s.is_zero():
        return "0"
    pieces = [_scalar_piece(k, *s.terms[k]) for k in sorted(s.terms, reverse=True)]
    return _join_signed(pieces)


def _join_signed(pieces) -> str:
    out = []
    for idx, (neg, txt) in enumerate(pieces):
        if idx == 0:
            out.append(("-" if neg else "") + txt)
        else:
            out.append((" - " if neg else " + ") + txt)
    return "".join(out)


def _mono_text(ctx: VarContext, e) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 0:
            continue
        nm = ctx.names[i]
        parts.append(nm if k == 1 else "%s^%d" % (nm, k))
    return "*".join(parts)


def _poly_pieces(p: Poly):
    """Signed pieces for each term, leading term first."""
    ctx = p.ctx
    pieces = []
    for e in sorted(p.terms, key=_grlex_key, reverse=True):
        c = p.terms[e]
        mono = _mono_text(ctx, e)
        if not mono:
            for k in sorted(c.terms, reverse=True):
                pieces.append(_scalar_piece(k, *c.terms[k]))
            continue
        if c.is_one():
            pieces.append((False, mono))
            continue
        if (-c).is_one():
            pieces.append((True, mono))
            continue
        sp = c.single_power()
        if sp is not None:
            k, (a, b) = sp
            neg, base = _scalar_piece(k, a, b)
            pieces.append((neg, base + "*" + mono))
        else:
            pieces.append((False, "(" + scalar_text(c) + ")*" + mono))
    return pieces


def poly_text(p: Poly) -> str:
    if p.is_zero():
        return "0"
    return _join_signed(_poly_pieces(p))


def _coeff_times(p: Poly, tail: str):
    """Signed pieces for p*tail, parenthesizing multi-term coefficients."""
    if p.is_one():
        return [(False, tail)]
    if (-p).is_one():
        return [(True, tail)]
    pieces = _poly_pieces(p)
    if len(pieces) == 1:
        neg, txt = pieces[0]
        return [(neg, txt + "*" + tail)]
    return [(False, "(" + poly_text(p) + ")*" + tail)]


def field_text(v: LogVectorField) -> str:
    ctx = v.ctx
    pieces = []
    for i, c in enumerate(v.coeffs):
        if c.is_zero():
            continue
        pieces.extend(_coeff_times(c, "@" + ctx.names[i]))
    if not pieces:
        return "0*@" + ctx.names[0]
    return _join_signed(pieces)


def _cell_text(ctx: VarContext, I) -> str:
    parts = []
    for i in I:
        nm = ctx.names[i]
        parts.append("dlog(%s)" % nm if ctx.is_divisor_index(i) else "d(%s)" % nm)
    return "^".join(parts)


def form_text(f: LogForm) -> str:
    ctx = f.ctx
    if f.degree == 0:
        return poly_text(f.coefficient(()))
    pieces = []
    for I in sorted(f.terms):
        c = f.terms[I]
        if c.is_zero():
            continue
        pieces.extend(_coeff_times(c, _cell_text(ctx, I)))
    if not pieces:
        return "0*" + _cell_text(ctx, tuple(range(f.degree)))
    return _join_signed(pieces)


def print_canonical(obj) -> str:
    if isinstance(obj, Scalar):
        return scalar_text(obj)
    if isinstance(obj, Poly):
        return poly_text(obj)
    if isinstance(obj, LogVectorField):
        return field_text(obj)
    if isinstance(obj, LogForm):
        return form_text(obj)
    if isinstance(obj, Connection1):
        return form_text(obj.sigma)
    raise TypeError("cannot print %r" % type(obj).__name__)


def print_session(m: SessionManifest) -> str:
    lines = ["vars " + " ".join(m.ctx.names)]
    if m.divisor_poly is not None:
        lines.append("divisor poly " + poly_text(m.divisor_poly))
    elif m.ctx.divisor:
        lines.append("divisor coords " + " ".join(m.ctx.names[i] for i in m.ctx.divisor))
    lines.append("arena " + m.ctx.arena)
    for kind, name in m.order:
        lines.append("%s %s : %s" % (kind, name, print_canonical(m.named(kind, name))))
    return "\n".join(lines) + "\n"
