"""Rank-1 logarithmic connections and the prequantization pipeline.

A connection on the trivialized line module is its connection 1-form sigma
(nabla s = sigma (x) s), with curvature d(sigma).  On top of that sit gauge
moves by closed forms, flatness with the residue decomposition, torus periods
and the integrality predicate, an explicit homotopy splitting every closed
form into a constant-coefficient class part plus an exact part, residue
normalization into the fundamental domain of C -> C/Z, and the end-to-end
pipeline that either constructs a connection with curvature T*omega or
reports the exact obstruction.

The homotopy works termwise on eigencomponents: the operators d i_xi + i_xi d
for the log frame fields and d i_E + i_E d for the plain-coordinate Euler
field act diagonally on monomial cells (with the log exponent, respectively
plain-degree-plus-coframe-count, as eigenvalue), commute with d, and so
contract every nonzero eigenvalue piece of a closed form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import floor
from typing import Dict, List, Optional, Tuple

from .calculus import (
    CalculusError,
    LogForm,
    LogVectorField,
    gram_matrix,
    log_frame,
    res_const,
)
from .context import TORUS, VarContext
from .divisors import is_coordinate_ncd, weighted_homogeneous
from .linalg import det_poly
from .poly import Poly
from .scalars import Scalar


class PrequantError(ValueError):
    pass


@dataclass(frozen=True)
class Connection1:
    sigma: LogForm
    curvature: LogForm = field(init=False)

    def __post_init__(self):
        if self.sigma.degree != 1:
            raise PrequantError("connection form must have degree 1")
        object.__setattr__(self, "curvature", self.sigma.d())


def gauge(conn: Connection1, tau: LogForm) -> Connection1:
    """Shift the connection form by a closed 1-form; curvature is unchanged
    (checked bit-exactly, not assumed)."""
    if tau.degree != 1:
        raise PrequantError("gauge form must have degree 1")
    if not tau.d().is_zero():
        raise PrequantError("gauge form must be closed")
    out = Connection1(conn.sigma + tau)
    if out.curvature != conn.curvature:
        raise PrequantError("gauge changed the curvature (internal error)")
    return out


def is_flat(conn: Connection1):
    """Flat iff the curvature vanishes.

    When flat, the connection form is decomposed as (constant residues on the
    log coframe) + d(primitive) through the homotopy, and the residue list is
    returned: (True, [Scalar per divisor coordinate]).  Otherwise (False,
    curvature).
    """
    if not conn.curvature.is_zero():
        return False, conn.curvature
    cls, prim = class_and_primitive(conn.sigma)
    residues = [cls.coefficient((i,)).constant_coefficient() for i in conn.sigma.ctx.divisor]
    try:
        ok, direct = res_const(conn.sigma)
    except CalculusError:
        ok, direct = True, None  # Laurent coefficients: evaluation model inapplicable
    if ok and direct is not None and direct != residues:
        raise PrequantError("residue decomposition mismatch (internal error)")
    if not ok:
        raise PrequantError(
            "closed 1-form with nonconstant residue %r (model violation)" % (direct,)
        )
    return True, residues


# -- periods and integrality ------------------------------------------------


def periods(omega: LogForm) -> List[Tuple[Tuple[int, int], Scalar]]:
    """Period of a closed 2-form over each torus 2-cycle |z_i| = |z_j| = 1,
    i < j divisor coordinates: the iterated residue gives T per log factor,
    so the period is T^2 times the constant Laurent coefficient of the
    e^i^e^j cell.  All other cells integrate to zero."""
    if omega.degree != 2:
        raise PrequantError("periods want a 2-form")
    if not omega.d().is_zero():
        raise PrequantError("periods of a non-closed form are undefined")
    t2 = Scalar.two_pi_i(2)
    out = []
    for i, j in combinations(omega.ctx.divisor, 2):
        c = omega.coefficient((i, j)).constant_coefficient()
        out.append(((i, j), t2 * c))
    return out


def integrality_check(omega: LogForm):
    """Whether every period is an integer multiple of T.

    Returns (True, [(pair, n)]) with the integers, or (False, (pair, period))
    with the first offending period.
    """
    ints = []
    for pair, p in periods(omega):
        n = p.integer_times_t()
        if n is None:
            return False, (pair, p)
        ints.append((pair, n))
    return True, ints


# -- homotopy: class part and primitive -------------------------------------


def _euler_plain(ctx: VarContext) -> LogVectorField:
    coeffs = []
    for i, name in enumerate(ctx.names):
        if ctx.is_divisor_index(i):
            coeffs.append(Poly.zero(ctx))
        else:
            coeffs.append(Poly.variable(ctx, name))
    return LogVectorField(ctx, coeffs)


def class_and_primitive(omega: LogForm) -> Tuple[LogForm, LogForm]:
    """Split a closed form as omega = class + d(primitive), with the class
    carrying only constant coefficients on pure log cells.

    Terms are grouped by (log exponent vector, plain weight); each group with
    a nonzero log exponent alpha_i is contracted through (1/alpha_i) i_{xi_i},
    each group with zero log exponents but positive plain weight N through
    (1/N) i_{Euler}, and the (0, 0) groups are exactly the class part.  The
    identity d(primitive) + class == omega is verified before returning.
    """
    ctx = omega.ctx
    if omega.degree < 1:
        raise PrequantError("homotopy wants degree >= 1")
    if not omega.d().is_zero():
        raise PrequantError("form is not closed")
    div = ctx.divisor
    sset = set(div)
    groups: Dict[tuple, Dict[tuple, Poly]] = {}
    for I, c in omega.terms.items():
        jp = sum(1 for i in I if i not in sset)
        for e, coeff in c.terms.items():
            alog = tuple(e[i] for i in div)
            nplain = sum(e[i] for i in range(ctx.n) if i not in sset)
            sig = (alog, nplain + jp)
            tgt = groups.setdefault(sig, {})
            mono = Poly.monomial(ctx, e, coeff)
            prev = tgt.get(I)
            tgt[I] = mono if prev is None else prev + mono
    frame = log_frame(ctx)
    euler = _euler_plain(ctx)
    cls = LogForm.zero(ctx, omega.degree)
    prim = LogForm.zero(ctx, omega.degree - 1)
    for (alog, nw), terms in groups.items():
        part = LogForm(ctx, omega.degree, terms)
        pivot = next((k for k, a in enumerate(alog) if a != 0), None)
        if pivot is not None:
            inv = Scalar.from_rational(Fraction(1, alog[pivot]))
            prim = prim + part.interior(frame[div[pivot]]).scale_scalar(inv)
        elif nw > 0:
            inv = Scalar.from_rational(Fraction(1, nw))
            prim = prim + part.interior(euler).scale_scalar(inv)
        else:
            cls = cls + part
    if prim.d() + cls != omega:
        raise PrequantError("homotopy verification failed (internal error)")
    return cls, prim


# -- residue normalization --------------------------------------------------


def normalize_residues(conn: Connection1) -> Tuple[Connection1, List[int]]:
    """Shift each residue by an integer so its rational real part lands in
    [0, 1) (the standard section of C -> C/Z in this scalar model).

    Residues must be constants with T-power 0; anything else is not
    normalizable here and raises.  Curvature is unchanged since integer
    multiples of the log coframe are closed.
    """
    ctx = conn.sigma.ctx
    if ctx.arena != TORUS:
        raise PrequantError("residue normalization lives in the torus arena")
    shifts = []
    tau_terms = {}
    for i in ctx.divisor:
        res_form = conn.sigma.residue(i)
        r = res_form.coefficient(()).as_constant()
        if r is None:
            raise PrequantError(
                "nonconstant residue along %s cannot be normalized" % ctx.names[i]
            )
        s = _t0_real_or_none(r)
        if s is None:
            raise PrequantError(
                "residue along %s is not a T-power-0 rational in this model"
                % ctx.names[i]
            )
        shift = -floor(s)
        shifts.append(shift)
        if shift:
            tau_terms[(i,)] = Poly.constant(ctx, Scalar.from_int(shift))
    out = Connection1(conn.sigma + LogForm(ctx, 1, tau_terms))
    if out.curvature != conn.curvature:
        raise PrequantError("normalization changed the curvature (internal error)")
    return out, shifts


def _t0_real_or_none(r: Scalar) -> Optional[Fraction]:
    if r.is_zero():
        return Fraction(0)
    if set(r.terms) != {0}:
        return None
    a, _ = r.terms[0]
    return a


def _normalize_residues_soft(conn: Connection1) -> Tuple[Connection1, List[int]]:
    """Pipeline variant: shift only the normalizable part of each residue
    (the T^0 real component of its constant term) and leave the rest alone,
    so connections with function-valued residues pass through untouched."""
    ctx = conn.sigma.ctx
    shifts = []
    tau_terms = {}
    for i in ctx.divisor:
        try:
            res_form = conn.sigma.residue(i)
            r = res_form.coefficient(()).constant_coefficient()
        except CalculusError:
            shifts.append(0)
            continue
        pair = r.terms.get(0)
        shift = -floor(pair[0]) if pair else 0
        shifts.append(shift)
        if shift:
            tau_terms[(i,)] = Poly.constant(ctx, Scalar.from_int(shift))
    out = Connection1(conn.sigma + LogForm(ctx, 1, tau_terms))
    if out.curvature != conn.curvature:
        raise PrequantError("normalization changed the curvature (internal error)")
    return out, shifts


# -- the pipeline -----------------------------------------------------------


@dataclass(frozen=True)
class PrequantReport:
    closed: bool
    nondegenerate: bool
    even_dim: bool
    periods: List[Tuple[Tuple[int, int], Scalar]]
    integral: Optional[bool]
    witness: Optional[Tuple[Tuple[int, int], Scalar]]
    class_part: Optional[LogForm]
    primitive: Optional[LogForm]
    connection: Optional[Connection1]
    residues: List[Tuple[int, Poly]]
    normalized_shifts: List[int]
    obstruction: Optional[str]
    lct_caveat: str

    @property
    def prequantizable(self) -> Optional[bool]:
        if not (self.closed and self.even_dim and self.nondegenerate):
            return False
        return self.integral


def prequantize(omega: LogForm, divisor_h: Optional[Poly] = None) -> PrequantReport:
    """Run the full chart-level pipeline on a candidate log 2-form.

    Checks closedness, nondegeneracy (log-frame Gram determinant a unit of the
    arena), even chart dimension, periods and their integrality, then splits
    T*omega into class + d(primitive).  When the class part vanishes the
    primitive is an actual connection form with curvature T*omega and is
    returned (residues normalized); when it is nonzero but integral, the
    verdict is positive but the chart construction stops at the obstruction
    note; otherwise the first non-integral period is the witness.
    """
    if not isinstance(omega, LogForm):  # allow assembled symplectic data
        omega = omega.omega
    ctx = omega.ctx
    if omega.degree != 2:
        raise PrequantError("prequantization wants a 2-form")
    closed = omega.d().is_zero()
    even = ctx.n % 2 == 0
    gram = gram_matrix(omega, log_frame(ctx))
    det = det_poly(gram)
    nondeg = det.is_unit_monomial()
    period_list: List[Tuple[Tuple[int, int], Scalar]] = []
    integral: Optional[bool] = None
    witness = None
    cls = prim = None
    connection = None
    residues: List[Tuple[int, Poly]] = []
    shifts: List[int] = []
    obstruction = None
    if closed:
        period_list = periods(omega)
        ok, data = integrality_check(omega)
        integral = ok
        if not ok:
            witness = data
        t_omega = omega.scale_scalar(Scalar.two_pi_i())
        cls, prim = class_and_primitive(t_omega)
        if cls.is_zero() and nondeg and even:
            conn = Connection1(prim)
            if conn.curvature != t_omega:
                raise PrequantError("pipeline curvature mismatch (internal error)")
            connection, shifts = _normalize_residues_soft(conn)
            for i in ctx.divisor:
                try:
                    residues.append(
                        (i, connection.sigma.residue(i).coefficient(()))
                    )
                except CalculusError:
                    continue
        elif not cls.is_zero():
            if integral:
                obstruction = (
                    "class part nonzero: a chart connection exists only for exact "
                    "forms; the integral class extends by the normal-crossing "
                    "extension theory, chart gluing out of scope"
                )
            else:
                obstruction = "non-integral period obstructs prequantization"
    else:
        obstruction = "form is not closed"
    if closed and not nondeg and obstruction is None:
        obstruction = "form is degenerate on this chart"
    return PrequantReport(
        closed=closed,
        nondegenerate=nondeg,
        even_dim=even,
        periods=period_list,
        integral=integral,
        witness=witness,
        class_part=cls,
        primitive=prim,
        connection=connection,
        residues=residues,
        normalized_shifts=shifts,
        obstruction=obstruction,
        lct_caveat=_lct_note(ctx, divisor_h),
    )


def _lct_note(ctx: VarContext, h: Optional[Poly]) -> str:
    if h is None:
        if ctx.divisor:
            return (
                "divisor is the coordinate normal crossing %s: chart "
                "hypotheses for comparing log and complement cohomology hold"
                % " * ".join(ctx.names[i] for i in ctx.divisor)
            )
        return "no divisor declared: plain de Rham chart"
    ok, _ = is_coordinate_ncd(h)
    if ok:
        return (
            "divisor is a coordinate normal crossing: chart hypotheses for "
            "comparing log and complement cohomology hold"
        )
    wh = weighted_homogeneous(h)
    if wh is not None:
        w, d = wh
        return (
            "chart equation is weighted homogeneous (weights %s, degree %d); "
            "comparison hypothesis holds modulo freeness of the divisor"
            % (",".join(str(x) for x in w), d)
        )
    return (
        "chart equation is not weighted homogeneous: comparison of log and "
        "complement cohomology unverified; verdicts refer to the log complex"
    )
