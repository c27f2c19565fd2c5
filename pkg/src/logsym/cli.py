"""Command-line surface: every operation over a session file.

Exit codes: 0 = check passed / computation succeeded, 1 = check failed with a
verdict (non-integral, not free, defect nonzero, ...), 2 = usage, parse, or
unknown-name errors.  Output is byte-deterministic; --format json mirrors the
text verdicts with stable field names under "schema": "logsym/1".
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional, Tuple

from .calculus import (
    CalculusError,
    DegenerateError,
    LogForm,
    LogVectorField,
    assemble_symplectic,
    gram_matrix,
    log_frame,
    res_const,
)
from .connections import (
    Connection1,
    PrequantError,
    class_and_primitive,
    gauge as gauge_op,
    integrality_check,
    is_flat,
    normalize_residues,
    periods,
    prequantize,
)
from .divisors import DivisorError, check_squarefree, is_coordinate_ncd, saito_check, weighted_homogeneous
from .linalg import LinAlgError, det_poly
from .operators import LogDiffOp1, decompose, dirac_check, from_connection, prequantum_op
from .poisson import PoissonError, bracket, hamiltonian, jacobi_defect, sing_bracket, verify_identities
from .poly import Poly, PolyError
from .scalars import Scalar, ScalarError
from .sessions import (
    SessionError,
    SessionManifest,
    eval_in_session,
    parse_session,
    print_canonical,
)

SCHEMA = "logsym/1"


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# -- resolution helpers -----------------------------------------------------


def _load_session(path: str) -> SessionManifest:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as e:
        raise CliError(2, "cannot read session: %s" % e)
    try:
        return parse_session(text)
    except SessionError as e:
        raise CliError(2, "session: %s" % e)


def _eval(m: SessionManifest, text: str):
    try:
        return eval_in_session(m, text)
    except SessionError as e:
        raise CliError(2, "in %r: %s" % (text, e))


def _get_poly(m: SessionManifest, text: str) -> Poly:
    v = m.funcs.get(text)
    if v is not None:
        return v
    v = _eval(m, text)
    if isinstance(v, Scalar):
        return Poly.constant(m.ctx, v)
    if isinstance(v, Poly):
        return v
    raise CliError(2, "%r is not a function" % text)


def _get_form(m: SessionManifest, name: Optional[str]) -> LogForm:
    if name is None:
        if len(m.forms) == 1:
            return next(iter(m.forms.values()))
        raise CliError(2, "give --form (session has %d forms)" % len(m.forms))
    v = m.forms.get(name)
    if v is not None:
        return v
    v = _eval(m, name)
    if isinstance(v, LogForm):
        return v
    raise CliError(2, "%r is not a form" % name)


def _get_conn(m: SessionManifest, name: str) -> Connection1:
    v = m.conns.get(name)
    if v is not None:
        return v
    v = _eval(m, name)
    if isinstance(v, Connection1):
        return v
    if isinstance(v, LogForm) and v.degree == 1:
        return Connection1(v)
    raise CliError(2, "%r is not a connection" % name)


def _get_field(m: SessionManifest, name: str) -> LogVectorField:
    v = m.vfields.get(name)
    if v is not None:
        return v
    v = _eval(m, name)
    if isinstance(v, LogVectorField):
        return v
    raise CliError(2, "%r is not a vector field" % name)


def _symplectic(m: SessionManifest, form_name: Optional[str]):
    w = _get_form(m, form_name)
    try:
        return assemble_symplectic(w)
    except DegenerateError as e:
        raise CliError(1, "degenerate: det = %s" % print_canonical(e.det))
    except CalculusError as e:
        raise CliError(1, str(e))


def _divisor_poly(m: SessionManifest, arg: Optional[str]) -> Poly:
    if arg is not None:
        return _get_poly(m, arg)
    h = m.divisor_equation()
    if h is None:
        raise CliError(2, "session declares no divisor")
    return h


def _pair_name(ctx, pair) -> str:
    return "T_{%s,%s}" % (ctx.names[pair[0]], ctx.names[pair[1]])


# -- subcommand handlers ----------------------------------------------------
# each returns (exit_code, json_payload, text_lines)


def cmd_check_divisor(m, args):
    h = _divisor_poly(m, args.poly)
    ok, witness = check_squarefree(h)
    ncd, coords = is_coordinate_ncd(h)
    lines = ["reduced" if ok else "repeated factor: %s" % print_canonical(witness)]
    if ncd:
        lines.append(
            "normal crossing: %s" % "*".join(m.ctx.names[i] for i in coords)
        )
    payload = {
        "reduced": ok,
        "witness": None if ok else print_canonical(witness),
        "normal_crossing": ncd,
        "coords": [m.ctx.names[i] for i in coords] if ncd else [],
    }
    return (0 if ok else 1), payload, lines


def cmd_check_saito(m, args):
    names = [s for s in args.fields.split(",") if s]
    fields = [_get_field(m, nm) for nm in names]
    h = _divisor_poly(m, args.poly)
    try:
        res = saito_check(fields, h)
    except DivisorError as e:
        return 1, {"free": False, "error": str(e)}, ["not free: %s" % e]
    if res.free:
        line = "free: det = %s = %s*h" % (
            print_canonical(res.det), print_canonical(res.certificate),
        )
        return 0, {
            "free": True,
            "det": print_canonical(res.det),
            "certificate": print_canonical(res.certificate),
        }, [line]
    return 1, {"free": False, "det": print_canonical(res.det)}, [
        "not free: det = %s is not a unit multiple of h" % print_canonical(res.det)
    ]


def cmd_check_logsymplectic(m, args):
    w = _get_form(m, args.form)
    if w.degree != 2:
        raise CliError(2, "--form must be a 2-form")
    closed = w.d().is_zero()
    if args.fields:
        frame = [_get_field(m, nm) for nm in args.fields.split(",") if nm]
        gram = gram_matrix(w, frame)
        det = det_poly(gram)
        nondeg = (not det.is_zero()) and det.is_constant()
        kind = "saito"
    else:
        gram = gram_matrix(w, log_frame(m.ctx))
        det = det_poly(gram)
        nondeg = det.is_unit_monomial()
        kind = "log"
    lines = [
        "closed: %s" % ("yes" if closed else "no"),
        "nondegenerate: %s (det = %s, %s frame)"
        % ("yes" if nondeg else "no", print_canonical(det), kind),
    ]
    code = 0 if (closed and nondeg) else 1
    return code, {
        "closed": closed,
        "nondegenerate": nondeg,
        "det": print_canonical(det),
        "frame": kind,
    }, lines


def cmd_hamiltonian(m, args):
    S = _symplectic(m, args.form)
    f = _get_poly(m, args.f)
    try:
        res = hamiltonian(S, f)
    except (PoissonError, LinAlgError) as e:
        return 1, {"error": str(e)}, ["no hamiltonian field: %s" % e]
    txt = print_canonical(res.delta)
    return 0, {"delta": txt}, ["delta = %s" % txt]


def cmd_bracket(m, args):
    S = _symplectic(m, args.form)
    f = _get_poly(m, args.f)
    g = _get_poly(m, args.g)
    val = bracket(S, f, g)
    txt = print_canonical(val)
    return 0, {"bracket": txt}, ["{f,g} = %s" % txt]


def cmd_singbracket(m, args):
    S = _symplectic(m, args.form)
    f = _get_poly(m, args.f)
    g = _get_poly(m, args.g)
    try:
        val = sing_bracket(S, f, g)
    except PoissonError as e:
        raise CliError(2, str(e))
    txt = print_canonical(val)
    return 0, {"sing_bracket": txt}, ["{f,g}_sing = %s" % txt]


def cmd_jacobi(m, args):
    S = _symplectic(m, args.form)
    f, g, h = (_get_poly(m, t) for t in (args.f, args.g, args.h))
    d = jacobi_defect(S, f, g, h)
    txt = print_canonical(d)
    code = 0 if d.is_zero() else 1
    return code, {"defect": txt, "zero": d.is_zero()}, ["jacobi defect = %s" % txt]


def cmd_identities(m, args):
    S = _symplectic(m, args.form)
    u, v, a, b = (_get_poly(m, t) for t in (args.u, args.v, args.a, args.b))
    try:
        rep = verify_identities(S, u, v, a, b)
    except PoissonError as e:
        raise CliError(2, str(e))
    items = [
        ("hamiltonian of a product", rep.defect_i.is_zero(), print_canonical(rep.defect_i)),
        ("bracket vs pairing", rep.defect_iii.is_zero(), print_canonical(rep.defect_iii)),
        ("bracket of hamiltonian fields", rep.defect_iv.is_zero(), print_canonical(rep.defect_iv)),
        ("tilde field recombination", rep.defect_v.is_zero(), print_canonical(rep.defect_v)),
        ("jacobi", rep.jacobi.is_zero(), print_canonical(rep.jacobi)),
    ]
    lines = []
    for name, ok, txt in items:
        lines.append("%s: %s" % (name, "holds" if ok else "defect = %s" % txt))
    add = rep.defect_ii
    add_txt = "(%s) / (%s)" % (print_canonical(add.num), print_canonical(add.den))
    lines.append(
        "additivity over sums (informational): defect = %s" % add_txt
    )
    code = 0 if rep.core_identities_hold else 1
    payload = {
        "identities": {nm: ok for nm, ok, _ in items},
        "additivity_defect": add_txt,
        "all_hold": rep.core_identities_hold,
    }
    return code, payload, lines


def cmd_symbol(m, args):
    if (args.vfield is None) == (args.f is None):
        raise CliError(2, "give exactly one of --vfield or --f")
    conn = _get_conn(m, args.conn)
    if args.vfield is not None:
        op = from_connection(conn.sigma, _get_field(m, args.vfield))
    else:
        S = _symplectic(m, args.form)
        f = _get_poly(m, args.f)
        op = prequantum_op(f, S, conn.sigma)
    txt = print_canonical(op.symbol())
    return 0, {"symbol": txt}, ["symbol = %s" % txt]


def cmd_decompose(m, args):
    conn = _get_conn(m, args.conn)
    delta = _get_field(m, args.vfield)
    mult = _get_poly(m, args.mult) if args.mult else Poly.zero(m.ctx)
    op = LogDiffOp1(delta, mult)
    sym, mpart = decompose(op, conn.sigma)
    ls, lm = print_canonical(sym), print_canonical(mpart)
    return 0, {"symbol": ls, "multiplier": lm}, [
        "symbol = %s" % ls, "multiplier = %s" % lm,
    ]


def cmd_dirac_test(m, args):
    S = _symplectic(m, args.form)
    conn = _get_conn(m, args.conn)
    f = _get_poly(m, args.f)
    g = _get_poly(m, args.g)
    rep = dirac_check(f, g, S, conn.sigma)
    if rep.holds:
        return 0, {"holds": True}, ["holds"]
    txt = print_canonical(rep.defect.mult)
    return 1, {"holds": False, "defect_multiplier": txt}, [
        "fails: defect multiplier = %s" % txt
    ]


def cmd_curvature(m, args):
    conn = _get_conn(m, args.conn)
    txt = print_canonical(conn.curvature)
    return 0, {"curvature": txt}, ["curvature = %s" % txt]


def cmd_gauge(m, args):
    conn = _get_conn(m, args.conn)
    tau = _get_form(m, args.tau)
    try:
        out = gauge_op(conn, tau)
    except PrequantError as e:
        raise CliError(2, str(e))
    txt = print_canonical(out.sigma)
    return 0, {"sigma": txt}, ["sigma = %s" % txt]


def cmd_flat(m, args):
    conn = _get_conn(m, args.conn)
    flat, data = is_flat(conn)
    if flat:
        res = ", ".join(print_canonical(r) for r in data)
        return 0, {
            "flat": True,
            "residues": [print_canonical(r) for r in data],
        }, ["flat: residues [%s]" % res]
    txt = print_canonical(data)
    return 1, {"flat": False, "curvature": txt}, ["not flat: curvature = %s" % txt]


def cmd_residues(m, args):
    if args.conn:
        w = _get_conn(m, args.conn).sigma
    else:
        w = _get_form(m, args.form)
    if w.degree != 1:
        raise CliError(2, "residues wants a degree-1 form")
    try:
        ok, data = res_const(w)
    except CalculusError as e:
        raise CliError(2, str(e))
    ctx = m.ctx
    if ok:
        lines = [
            "residue along %s = %s" % (ctx.names[i], print_canonical(r))
            for i, r in zip(ctx.divisor, data)
        ]
        if not lines:
            lines = ["no divisor coordinates"]
        return 0, {
            "constant": True,
            "residues": [print_canonical(r) for r in data],
        }, lines
    i, poly = data
    txt = print_canonical(poly)
    return 1, {"constant": False, "along": ctx.names[i], "value": txt}, [
        "nonconstant residue along %s: %s" % (ctx.names[i], txt)
    ]


def cmd_normalize_residues(m, args):
    conn = _get_conn(m, args.conn)
    try:
        out, shifts = normalize_residues(conn)
    except PrequantError as e:
        raise CliError(2, str(e))
    txt = print_canonical(out.sigma)
    return 0, {"sigma": txt, "shifts": shifts}, [
        "shifts = (%s)" % ", ".join("%+d" % s for s in shifts),
        "sigma = %s" % txt,
    ]


def cmd_periods(m, args):
    w = _get_form(m, args.form)
    try:
        ps = periods(w)
    except PrequantError as e:
        return 1, {"error": str(e)}, [str(e)]
    lines = [
        "period %s over %s" % (print_canonical(p), _pair_name(m.ctx, pair))
        for pair, p in ps
    ] or ["no torus 2-cycles"]
    return 0, {
        "periods": [
            {"cycle": _pair_name(m.ctx, pair), "value": print_canonical(p)}
            for pair, p in ps
        ]
    }, lines


def cmd_integrality(m, args):
    w = _get_form(m, args.form)
    try:
        ok, data = integrality_check(w)
    except PrequantError as e:
        return 1, {"error": str(e)}, [str(e)]
    if ok:
        lines = [
            "integral: period = %d*T over %s" % (n, _pair_name(m.ctx, pair))
            for pair, n in data
        ] or ["integral: no torus 2-cycles"]
        return 0, {
            "integral": True,
            "multiples": [
                {"cycle": _pair_name(m.ctx, pair), "n": n} for pair, n in data
            ],
        }, lines
    pair, p = data
    line = "non-integral: period %s over %s" % (
        print_canonical(p), _pair_name(m.ctx, pair),
    )
    return 1, {
        "integral": False,
        "witness": {"cycle": _pair_name(m.ctx, pair), "value": print_canonical(p)},
    }, [line]


def cmd_class(m, args):
    w = _get_form(m, args.form)
    try:
        cls, _ = class_and_primitive(w)
    except PrequantError as e:
        return 1, {"error": str(e)}, [str(e)]
    txt = print_canonical(cls)
    return 0, {"class": txt}, ["class = %s" % txt]


def cmd_primitive(m, args):
    w = _get_form(m, args.form)
    try:
        _, prim = class_and_primitive(w)
    except PrequantError as e:
        return 1, {"error": str(e)}, [str(e)]
    txt = print_canonical(prim)
    return 0, {"primitive": txt}, ["primitive = %s" % txt]


def cmd_prequantize(m, args):
    w = _get_form(m, args.form)
    if w.degree != 2:
        raise CliError(2, "--form must be a 2-form")
    rep = prequantize(w, m.divisor_poly)
    ctx = m.ctx
    lines = [
        "closed: %s" % ("yes" if rep.closed else "no"),
        "nondegenerate: %s" % ("yes" if rep.nondegenerate else "no"),
        "even dimension: %s (n = %d)" % ("yes" if rep.even_dim else "no", ctx.n),
    ]
    for pair, p in rep.periods:
        lines.append(
            "period %s over %s" % (print_canonical(p), _pair_name(ctx, pair))
        )
    if rep.integral is not None:
        if rep.integral:
            lines.append("integral: yes")
        else:
            pair, p = rep.witness
            lines.append(
                "non-integral: period %s over %s"
                % (print_canonical(p), _pair_name(ctx, pair))
            )
    if rep.class_part is not None:
        lines.append("class part = %s" % print_canonical(rep.class_part))
    if rep.connection is not None:
        lines.append("connection: sigma = %s" % print_canonical(rep.connection.sigma))
        if rep.normalized_shifts:
            lines.append(
                "residue shifts = (%s)"
                % ", ".join("%+d" % s for s in rep.normalized_shifts)
            )
        for i, r in rep.residues:
            lines.append(
                "residue along %s = %s" % (ctx.names[i], print_canonical(r))
            )
    if rep.obstruction:
        lines.append("obstruction: %s" % rep.obstruction)
    lines.append("note: %s" % rep.lct_caveat)
    verdict = bool(rep.prequantizable)
    payload = {
        "closed": rep.closed,
        "nondegenerate": rep.nondegenerate,
        "even_dim": rep.even_dim,
        "periods": [
            {"cycle": _pair_name(ctx, pair), "value": print_canonical(p)}
            for pair, p in rep.periods
        ],
        "integral": rep.integral,
        "class": None if rep.class_part is None else print_canonical(rep.class_part),
        "connection": None if rep.connection is None else print_canonical(rep.connection.sigma),
        "shifts": rep.normalized_shifts,
        "obstruction": rep.obstruction,
        "note": rep.lct_caveat,
        "prequantizable": verdict,
    }
    return (0 if verdict else 1), payload, lines


def cmd_weights(m, args):
    h = _divisor_poly(m, args.poly)
    res = weighted_homogeneous(h)
    if res is None:
        return 1, {"weighted_homogeneous": False}, ["none"]
    w, d = res
    return 0, {
        "weighted_homogeneous": True, "weights": list(w), "degree": d,
    }, ["weights: (%s) degree %d" % (", ".join(str(x) for x in w), d)]


# -- wiring -----------------------------------------------------------------

_COMMANDS = {
    "check-divisor": (cmd_check_divisor, ("poly",)),
    "check-saito": (cmd_check_saito, ("fields!", "poly")),
    "check-logsymplectic": (cmd_check_logsymplectic, ("form", "fields")),
    "hamiltonian": (cmd_hamiltonian, ("form", "f!")),
    "bracket": (cmd_bracket, ("form", "f!", "g!")),
    "singbracket": (cmd_singbracket, ("form", "f!", "g!")),
    "jacobi": (cmd_jacobi, ("form", "f!", "g!", "h!")),
    "identities": (cmd_identities, ("form", "u!", "v!", "a!", "b!")),
    "symbol": (cmd_symbol, ("conn!", "vfield", "f", "form")),
    "decompose": (cmd_decompose, ("conn!", "vfield!", "mult")),
    "dirac-test": (cmd_dirac_test, ("form", "conn!", "f!", "g!")),
    "curvature": (cmd_curvature, ("conn!",)),
    "gauge": (cmd_gauge, ("conn!", "tau!")),
    "flat": (cmd_flat, ("conn!",)),
    "residues": (cmd_residues, ("conn", "form")),
    "normalize-residues": (cmd_normalize_residues, ("conn!",)),
    "periods": (cmd_periods, ("form",)),
    "integrality": (cmd_integrality, ("form",)),
    "class": (cmd_class, ("form!",)),
    "primitive": (cmd_primitive, ("form!",)),
    "prequantize": (cmd_prequantize, ("form",)),
    "weights": (cmd_weights, ("poly",)),
}

_HELP = {
    "poly": "polynomial: a func name or expression (default: session divisor)",
    "fields": "comma-separated vfield names",
    "form": "form name or expression",
    "f": "function argument",
    "g": "function argument",
    "h": "function argument",
    "u": "function argument",
    "v": "function argument",
    "a": "function argument",
    "b": "function argument",
    "conn": "connection name",
    "vfield": "vector field name",
    "mult": "multiplier function (default 0)",
    "tau": "closed 1-form to add",
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="logsym",
        description="logarithmic symplectic calculus on affine charts",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    for name, (_, opts) in sorted(_COMMANDS.items()):
        p = sub.add_parser(name)
        p.add_argument("--session", required=True, help="session file, - for stdin")
        p.add_argument("--format", choices=("text", "json"), default="text")
        for opt in opts:
            required = opt.endswith("!")
            key = opt.rstrip("!")
            p.add_argument("--" + key, required=required, default=None,
                           help=_HELP.get(key, ""))
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    handler, _ = _COMMANDS[args.command]
    try:
        m = _load_session(args.session)
        code, payload, lines = handler(m, args)
    except CliError as e:
        if args.format == "json":
            doc = {"schema": SCHEMA, "command": args.command,
                   "error": str(e), "exit": e.code}
            print(json.dumps(doc, indent=2, sort_keys=True))
        else:
            print("error: %s" % e, file=sys.stderr)
        return e.code
    except (ScalarError, PolyError, CalculusError, LinAlgError, DivisorError,
            PoissonError, PrequantError, SessionError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    if args.format == "json":
        doc = {"schema": SCHEMA, "command": args.command, "exit": code}
        doc.update(payload)
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
