"""Unitary diagonalisation by recursive reduction.

The decision procedure: shift off the (1,1) entry, normalize to norm 1,
diagonalise the reduction over the residue field, lift its eigenspace
decomposition to a partition of unity, restrict to each class and recurse.
Failures surface as replayable certificates naming the offending residue
matrix; successes carry the unitary conjugator, the diagonal, and a
certified precision that degrades by one slack unit per recursion level.
"""

from dataclasses import dataclass

from .errors import (NotNaiveAtLevel, NotUnitarilyDiagonalisable,
                     PadspecError, PrecisionExhausted, TowerMismatch,
                     WrongShape)
from .pmatrix import (PMatrix, inverse, is_unitary, mat_spent,
                      matrix_reduction, norm_le, orthonormal_basis_of_span,
                      restriction_matrix, slack, sup_norm_v2, vec_sup_v2)
from .residue import (ResidueMatrix, diagonalise_residue,
                      lagrange_idempotents)
from .scalar import (INF, PadicScalar, from_rational, from_unit_vector,
                     hensel_sqrt, pi_power, scalar_congruent)
from .spectral import (_evaluate_lifted_poly, lift_idempotent,
                       partition_of_unity)


@dataclass
class FailureCertificate:
    """Where and why the recursion met a non-diagonalisable reduction.

    trail holds one record per level descended: the shift applied, the
    normalizer exponent, and (past level 0) the orthonormal class basis, so
    the offending residue matrix can be reproduced from the original input.
    """
    depth: int
    trail: list
    residue_matrix: object
    reason: str        # "NotSplit" | "NotSemisimple"
    witness: object

    def replay(self, mat: PMatrix):
        """Re-derive the offending residue matrix from the original input."""
        if not self.trail:
            raise PadspecError("empty trail")
        cur = mat
        for step in self.trail[:-1]:
            cur = restriction_matrix(cur, step["basis"])
        last = self.trail[-1]
        shifted = cur.shift(last["shift"])
        b = shifted.scale(pi_power(cur.tower, -last["normalizer_v2"]))
        return matrix_reduction(b)


@dataclass
class UnidiagOutcome:
    success: bool
    U: PMatrix | None = None
    D: list | None = None
    class_tree: dict | None = None
    certified_precision: int | None = None   # digits
    certificate: FailureCertificate | None = None


def unitary_diagonalise(mat: PMatrix) -> UnidiagOutcome:
    if not mat.is_square():
        raise WrongShape("diagonalising a non-square matrix")
    tower = mat.tower
    n = mat.n
    s = slack(n, tower)
    if tower.N < n * s + 4:
        raise PrecisionExhausted(
            f"N = {tower.N} below the slack budget {n * s + 4} for n = {n}")
    scale = min(min((e.v2_lower() for r in mat.rows for e in r),
                    default=0), 0)
    if any(e.abs2() < 2 * tower.N + scale for r in mat.rows for e in r):
        raise PrecisionExhausted("input entries must be exact at precision N")
    res = _recurse(mat, 0, [], s)
    if isinstance(res, FailureCertificate):
        return UnidiagOutcome(False, certificate=res)
    u, diag, tree, maxdepth = res
    ok, _ = is_unitary(u)
    if not ok:
        raise PrecisionExhausted("assembled conjugator is not unitary")
    residual = inverse(u) @ mat @ u - PMatrix.diagonal(tower, diag)
    certified = tower.N - maxdepth * s
    if not norm_le(residual, 2 * certified):
        # deep eigenvalue clusters consume normalizer digits beyond the
        # per-level slack model; certify what the residual actually shows
        achieved = min(e.v2_lower() for r in residual.rows for e in r)
        certified = min(certified, int(achieved // 2))
        if certified < 1:
            raise PrecisionExhausted("diagonal residual exceeds any "
                                     "certifiable precision")
    return UnidiagOutcome(True, U=u, D=diag, class_tree=tree,
                          certified_precision=certified)


def _recurse(mat, depth, trail, s):
    tower = mat.tower
    n = mat.n
    if n <= 1:
        tree = {"depth": depth, "kind": "leaf", "dim": n}
        return PMatrix.identity(tower, n), list(mat.diagonal_entries()), tree, depth
    m11 = mat.rows[0][0]
    shifted = mat.shift(m11)
    threshold = 2 * (tower.N - (depth + 1) * s)
    if norm_le(shifted, threshold):
        tree = {"depth": depth, "kind": "scalar_within_precision", "dim": n}
        return (PMatrix.identity(tower, n), list(mat.diagonal_entries()),
                tree, depth + 1)
    v = sup_norm_v2(shifted)
    b = shifted.scale(pi_power(tower, -v))
    bred = matrix_reduction(b)
    out = diagonalise_residue(bred)
    level = {"shift": m11, "normalizer_v2": v, "basis": None}
    if not out.ok:
        return FailureCertificate(depth, trail + [level], bred,
                                  out.reason, out.witness)
    pou = partition_of_unity(b)
    if len(pou.classes) == 1:
        # a diagonalisable non-scalar reduction has >= 2 eigenvalues; this
        # branch is unreachable unless precision lied about non-scalarity
        return FailureCertificate(depth, trail + [level], bred,
                                  "NotSemisimple", out.witness)
    u_blocks, diag, children = [], [], []
    maxdepth = depth
    for ev, proj in pou.classes:
        rank = matrix_reduction(proj).rank()
        cols = orthonormal_basis_of_span(proj.columns(), tower,
                                         expected_rank=rank)
        sub = restriction_matrix(mat, cols)
        step = {"shift": m11, "normalizer_v2": v, "basis": cols,
                "eigenvalue": ev}
        res = _recurse(sub, depth + 1, trail + [step], s)
        if isinstance(res, FailureCertificate):
            return res
        u_sub, d_sub, tree_sub, deep = res
        u_blocks.extend((cols @ u_sub).columns())
        diag.extend(d_sub)
        children.append({"eigenvalue": list(ev.coeffs), "dim": cols.m,
                         "child": tree_sub})
        maxdepth = max(maxdepth, deep)
    u = PMatrix.from_columns(tower, u_blocks)
    tree = {"depth": depth, "kind": "split", "dim": n,
            "normalizer_v2": v, "classes": children}
    return u, diag, tree, maxdepth


# -- repetitive reduction (naivety maps) --------------------------------------

def naive_chain(mat: PMatrix, levels: int):
    """[(P_1, r_1), ..., (P_levels, r_levels)] of the repetitive reduction.

    Each step projects onto the residue-eigenvalue-0 class of the normalized
    current remainder inside the corner cut out by the previous projection;
    a non-diagonalisable restriction raises NotNaiveAtLevel.
    """
    tower = mat.tower
    n = mat.n
    s = slack(n, tower)
    cap2 = 2 * (tower.N - s)
    proj = PMatrix.identity(tower, n)
    rem = mat
    chain = []
    for level in range(1, levels + 1):
        if mat_spent(rem, cap2, s):
            zero = PMatrix.zero(tower, n)
            chain.append((zero, zero))
            proj, rem = zero, zero
            continue
        v = sup_norm_v2(rem)
        rhat = rem.scale(pi_power(tower, -v))
        rbar = matrix_reduction(rhat)
        pbar = matrix_reduction(proj)
        vcols = pbar.column_space_basis()
        vmat = ResidueMatrix(tower, vcols).transpose()
        smat = vmat.solve_columns(rbar.matmul(vmat))
        out = diagonalise_residue(smat)
        if not out.ok:
            raise NotNaiveAtLevel(level, out)
        eigs = [ev for ev, _ in out.eigenvalues]
        zero_ev = next((ev for ev in eigs if ev.is_zero()), None)
        if zero_ev is None:
            zero = PMatrix.zero(tower, n)
            chain.append((zero, zero))
            proj, rem = zero, zero
            continue
        idx = eigs.index(zero_ev)
        e0 = lagrange_idempotents(eigs)[idx]
        approx = _evaluate_lifted_poly(e0, rhat) @ proj
        proj = lift_idempotent(approx)
        rem = proj @ mat
        chain.append((proj, rem))
    return chain


def naive_maps(mat: PMatrix, level: int):
    """(P_level, r_level); level 0 is the identity pair (1, A)."""
    if level == 0:
        return PMatrix.identity(mat.tower, mat.n), mat
    return naive_chain(mat, level)[-1]


# -- spectra of diagonalisable matrices ----------------------------------------

def spectrum_kvalued(mat: PMatrix, outcome: UnidiagOutcome | None = None):
    """Eigenvalue multiset of a unitarily diagonalisable matrix.

    The sup of the eigenvalue norms equals the operator norm; the procedure
    checks that identity before returning.
    """
    out = outcome or unitary_diagonalise(mat)
    if not out.success:
        raise NotUnitarilyDiagonalisable(out.certificate)
    lhs = sup_norm_v2(mat)
    rhs = vec_sup_v2(out.D)
    if lhs != rhs and min(lhs, rhs) < 2 * out.certified_precision:
        raise PadspecError("spectral norm identity violated")
    return out.D


# -- 2x2 involution criteria ---------------------------------------------------

@dataclass
class InvolutionReport:
    kind: str
    predicted: bool
    eigenvalues: list | None
    eigenvectors: list | None
    detail: str


def _norm_v2_or_inf(x: PadicScalar):
    if x.is_exact_zero():
        return INF
    if x.is_unit_form():
        return x.v2
    raise PrecisionExhausted("norm comparison hidden below the floor")


def _sqrt_in_tower(x: PadicScalar):
    """sqrt of a nonzero scalar when the tower contains one, else None."""
    tower = x.tower
    v = _norm_v2_or_inf(x)
    if v == INF:
        return None
    if v % 2:
        return None
    half_v = v // 2
    if half_v % 2 and not tower.ramified:
        return None
    unit_part = x * pi_power(tower, -v)
    root = hensel_sqrt(unit_part)
    if root is None:
        return None
    return root * pi_power(tower, half_v)


def galois_conj(x: PadicScalar) -> PadicScalar:
    """The nontrivial automorphism of the degree-2 unramified step."""
    tower = x.tower
    if tower.f != 2:
        raise TowerMismatch("conjugation needs the quadratic tower")
    if not x.is_unit_form():
        return x
    _, m1, _ = tower.modulus
    def conj_vec(vec):
        c0, c1 = vec
        return (c0 - c1 * m1, -c1)
    return from_unit_vector(tower, x.v2, conj_vec(x.unit),
                            conj_vec(x.runit), x.prec)


def involution_criteria(mat: PMatrix, kind: str) -> InvolutionReport:
    """Closed-form diagonalisability predictions for 2x2 involution-fixed
    matrices, with the explicit eigendata for cross-validation."""
    if mat.n != 2 or mat.m != 2:
        raise WrongShape("involution criteria are 2x2 statements")
    tower = mat.tower
    s = slack(2, tower)
    tol = 2 * (tower.N - s)
    a, b = mat.rows[0]
    c, d = mat.rows[1]
    two_b = b + b
    if kind == "star_symmetric":
        if not tower.ramified:
            raise TowerMismatch("the *-involution lives over k(sqrt(pi))")
        if not scalar_congruent(c, b * from_rational(tower.p, 1, tower), tol):
            raise WrongShape("M_21 != pi * M_12")
        dif = a - d
        vd, vb = _norm_v2_or_inf(dif), _norm_v2_or_inf(b)
        predicted = vd <= vb
        disc = dif * dif + from_rational(tower.p, 1, tower) * two_b * two_b
        detail = "|M1-M4| >= |M2|" if predicted else "|M1-M4| < |M2|"
    elif kind == "galois_symmetric":
        if tower.f != 2 or tower.p % 4 != 3 or tower.ramified:
            raise TowerMismatch(
                "the Galois involution needs the unramified quadratic tower, "
                "p = 3 mod 4")
        if not (scalar_congruent(c, galois_conj(b), tol)
                and scalar_congruent(a, galois_conj(a), tol)
                and scalar_congruent(d, galois_conj(d), tol)):
            raise WrongShape("matrix is not conjugate-transpose invariant")
        dif = a - d
        predicted = True
        disc = dif * dif + (two_b + two_b) * galois_conj(b)
        detail = "Galois-symmetric matrices always diagonalise unitarily"
    elif kind == "symmetric":
        if not scalar_congruent(c, b, tol):
            raise WrongShape("matrix is not symmetric")
        dif = a - d
        disc = dif * dif + two_b * two_b
        lead = min(_norm_v2_or_inf(dif), _norm_v2_or_inf(two_b))
        vdisc = INF if disc.is_exact_zero() else disc.v2_lower()
        predicted = (lead == INF) or (vdisc == 2 * lead)
        detail = ("discriminant keeps the leading norm" if predicted else
                  "leading cancellation in the discriminant")
    else:
        raise WrongShape(f"unknown involution kind {kind!r}")
    half = from_rational(1, 2, tower)
    root = _sqrt_in_tower(disc) if disc.is_unit_form() else None
    if root is None:
        return InvolutionReport(kind, predicted, None, None, detail)
    lam_plus = (a + d) * half + root * half
    lam_minus = (a + d) * half - root * half
    f_plus = (-two_b, dif - root)
    f_minus = (-two_b, dif + root)
    return InvolutionReport(kind, predicted, [lam_plus, lam_minus],
                            [f_plus, f_minus], detail)
