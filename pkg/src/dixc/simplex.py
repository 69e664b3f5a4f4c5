"""Exact rational simplex on a sparse tableau.

Two-phase primal simplex.  All arithmetic is exact (see rationals), so an
optimum is exact and the reported point satisfies every constraint exactly.
The pivot rule is deterministic: Dantzig's most-negative-reduced-cost column
with lowest-index tie break, falling back to Bland's rule whenever the
objective stalls on degenerate pivots (Bland's rule forbids cycling, which
makes termination unconditional); the ratio test always breaks ties on the
lowest basic variable index, as Bland requires.

Constraints are a . x <= b and e . x == d over variables that are free by
default.  A row that is literally -x_j <= 0 is absorbed as a sign restriction
on x_j; remaining free variables are split internally into differences of
nonnegative parts.  A solver instance can be re-maximized with many
objectives: the basis stays primal feasible when only the objective changes,
so repeated support-function queries cost a handful of pivots each.

Dual certificates: duals() returns one multiplier per input row such that
sum_i y_i a_i + sum_e mu_e e_e == c with y >= 0 and y.b + mu.d == optimum;
verify_certificate checks this exactly.
"""

from __future__ import annotations

from .rationals import ONE, ZERO, rat

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"

_STALL_LIMIT = 40


class LPOutcome:
    """Result of one maximize() call."""

    __slots__ = ("status", "value", "x")

    def __init__(self, status, value=None, x=None):
        self.status = status
        self.value = value
        self.x = x

    def __repr__(self):
        return f"LPOutcome({self.status}, value={self.value})"


class SimplexSolver:
    """Binds a constraint system once; maximize() may be called repeatedly."""

    def __init__(self, n_vars, ineqs, eqs=()):
        self.n_vars = n_vars
        self._ineqs = list(ineqs)
        self._eqs = list(eqs)
        self._infeasible_input = False
        self._phase1_done = False
        self._build()

    # -- construction -------------------------------------------------

    def _build(self):
        nv = self.n_vars
        self._nonneg = [False] * nv
        self._absorbed = [None] * nv
        for idx, (coef, b) in enumerate(self._ineqs):
            if b == 0 and len(coef) == 1:
                (j, c), = coef.items()
                if c < 0 and not self._nonneg[j]:
                    self._nonneg[j] = True
                    self._absorbed[j] = idx

        self._pos = [0] * nv
        self._neg = [None] * nv
        col = 0
        for j in range(nv):
            self._pos[j] = col
            col += 1
            if not self._nonneg[j]:
                self._neg[j] = col
                col += 1

        rows = []
        rhs = []
        meta = []  # ("i"|"e", original index, negated flag)
        slack_col = {}
        art_col = {}
        pending_art = []

        def structural_row(coef):
            row = {}
            for j, c in coef.items():
                row[self._pos[j]] = c
                if self._neg[j] is not None:
                    row[self._neg[j]] = -c
            return row

        for idx, (coef, b) in enumerate(self._ineqs):
            if self._absorbed_here(idx):
                continue
            row = structural_row(coef)
            if not row:
                if b < 0:
                    self._infeasible_input = True
                continue
            if b < 0:
                row = {c: -v for c, v in row.items()}
                b = -b
                meta.append(("i", idx, True))
                pending_art.append(len(rows))
            else:
                meta.append(("i", idx, False))
            rows.append(row)
            rhs.append(b)

        for idx, (coef, b) in enumerate(self._eqs):
            row = structural_row(coef)
            if not row:
                if b != 0:
                    self._infeasible_input = True
                continue
            negated = b < 0
            if negated:
                row = {c: -v for c, v in row.items()}
                b = -b
            meta.append(("e", idx, negated))
            pending_art.append(len(rows))
            rows.append(row)
            rhs.append(b)

        basis = [None] * len(rows)
        for i, (kind, idx, negated) in enumerate(meta):
            if kind == "i" and not negated:
                rows[i][col] = ONE
                slack_col[i] = col
                basis[i] = col
                col += 1
            elif kind == "i":
                rows[i][col] = -ONE  # surplus
                slack_col[i] = col
                col += 1
        self._first_art = col
        for i in pending_art:
            rows[i][col] = ONE
            art_col[i] = col
            basis[i] = col
            col += 1

        self._rows = rows
        self._rhs = rhs
        self._meta = meta
        self._basis = basis
        self._slack_col = slack_col
        self._art_col = art_col
        self._ncols = col
        self._z = {}
        self._zval = ZERO

    def _absorbed_here(self, idx):
        coef, b = self._ineqs[idx]
        if b == 0 and len(coef) == 1:
            (j, c), = coef.items()
            return c < 0 and self._absorbed[j] == idx
        return False

    # -- pivoting core ------------------------------------------------

    def _pivot(self, pr, pc):
        rows = self._rows
        rhs = self._rhs
        prow = rows[pr]
        piv = prow[pc]
        if piv != 1:
            inv = ONE / piv
            prow = {c: v * inv for c, v in prow.items()}
            rows[pr] = prow
            rhs[pr] = rhs[pr] * inv
        prhs = rhs[pr]
        pitems = list(prow.items())
        for i in range(len(rows)):
            if i == pr:
                continue
            row = rows[i]
            f = row.get(pc)
            if not f:
                continue
            for c, v in pitems:
                cur = row.get(c)
                nv = -f * v if cur is None else cur - f * v
                if nv:
                    row[c] = nv
                elif cur is not None:
                    del row[c]
            if prhs:
                rhs[i] = rhs[i] - f * prhs
        z = self._z
        f = z.get(pc)
        if f:
            for c, v in pitems:
                cur = z.get(c)
                nv = -f * v if cur is None else cur - f * v
                if nv:
                    z[c] = nv
                elif cur is not None:
                    del z[c]
            if prhs:
                self._zval = self._zval - f * prhs
        self._basis[pr] = pc

    def _set_costs(self, costs):
        z = {}
        zval = ZERO
        for i, row in enumerate(self._rows):
            cb = costs.get(self._basis[i])
            if cb:
                for c, v in row.items():
                    acc = z.get(c)
                    nv = cb * v if acc is None else acc + cb * v
                    if nv:
                        z[c] = nv
                    elif acc is not None:
                        del z[c]
                zval += cb * self._rhs[i]
        for c, cost in costs.items():
            acc = z.get(c, ZERO) - cost
            if acc:
                z[c] = acc
            else:
                z.pop(c, None)
        self._z = z
        self._zval = zval

    def _entering(self, barred, bland):
        z = self._z
        best_col = -1
        best_val = ZERO
        for c, v in z.items():
            if v < 0 and c not in barred:
                if bland:
                    if best_col == -1 or c < best_col:
                        best_col = c
                elif v < best_val or (v == best_val and (best_col == -1 or c < best_col)):
                    best_col = c
                    best_val = v
        return best_col

    def _leaving(self, pc):
        rows = self._rows
        rhs = self._rhs
        basis = self._basis
        leave = -1
        best = None
        for i in range(len(rows)):
            a = rows[i].get(pc)
            if a and a > 0:
                r = rhs[i] / a
                if best is None or r < best or (r == best and basis[i] < basis[leave]):
                    best = r
                    leave = i
        return leave

    def _run(self, barred):
        stall = 0
        bland = False
        while True:
            pc = self._entering(barred, bland)
            if pc == -1:
                return OPTIMAL
            pr = self._leaving(pc)
            if pr == -1:
                return UNBOUNDED
            before = self._zval
            self._pivot(pr, pc)
            if self._zval > before:
                stall = 0
                bland = False
            else:
                stall += 1
                if stall > _STALL_LIMIT:
                    bland = True
        # unreachable

    # -- phases ---------------------------------------------------------

    def _phase1(self):
        if self._phase1_done:
            return not self._infeasible_input
        self._phase1_done = True
        if self._infeasible_input:
            return False
        if self._art_col:
            costs = {c: -ONE for c in self._art_col.values()}
            self._set_costs(costs)
            status = self._run(barred=frozenset())
            assert status == OPTIMAL  # phase-1 objective is bounded above by 0
            if self._zval != 0:
                self._infeasible_input = True
                return False
            self._evict_artificials()
        return True

    def _evict_artificials(self):
        # pivot zero-level artificial variables out of the basis; rows where
        # that is impossible are dependent and can be deleted outright
        first_art = self._first_art
        drop = []
        for i in range(len(self._rows)):
            if self._basis[i] >= first_art:
                pivot_col = -1
                for c, v in self._rows[i].items():
                    if c < first_art and v:
                        if pivot_col == -1 or c < pivot_col:
                            pivot_col = c
                if pivot_col != -1:
                    self._pivot(i, pivot_col)
                else:
                    drop.append(i)
        if drop:
            keep = [i for i in range(len(self._rows)) if i not in set(drop)]
            remap = {}
            for new_i, old_i in enumerate(keep):
                remap[old_i] = new_i
            self._rows = [self._rows[i] for i in keep]
            self._rhs = [self._rhs[i] for i in keep]
            self._basis = [self._basis[i] for i in keep]
            self._meta = [self._meta[i] for i in keep]
            self._slack_col = {remap[i]: c for i, c in self._slack_col.items() if i in remap}
            self._art_col = {remap[i]: c for i, c in self._art_col.items() if i in remap}

    def maximize(self, objective) -> LPOutcome:
        """Maximize sum objective[j] * x_j; objective maps var index -> Q."""
        if not self._phase1():
            return LPOutcome(INFEASIBLE)
        costs = {}
        for j, c in objective.items():
            if not c:
                continue
            costs[self._pos[j]] = c
            if self._neg[j] is not None:
                costs[self._neg[j]] = -c
        self._set_costs(costs)
        status = self._run(barred=frozenset(self._art_col.values()))
        if status == UNBOUNDED:
            return LPOutcome(UNBOUNDED)
        return LPOutcome(OPTIMAL, self._zval, self._point())

    def _point(self):
        colval = {}
        for i, b in enumerate(self._basis):
            colval[b] = self._rhs[i]
        x = []
        for j in range(self.n_vars):
            v = colval.get(self._pos[j], ZERO)
            if self._neg[j] is not None:
                v = v - colval.get(self._neg[j], ZERO)
            x.append(v)
        return x

    def duals(self):
        """Multipliers for the last OPTIMAL maximize(), aligned with the
        input rows: (per-inequality list, per-equality list)."""
        z = self._z
        dual_ineq = [ZERO] * len(self._ineqs)
        dual_eq = [ZERO] * len(self._eqs)
        for j in range(self.n_vars):
            idx = self._absorbed[j]
            if idx is not None:
                dual_ineq[idx] = z.get(self._pos[j], ZERO)
        for i, (kind, idx, negated) in enumerate(self._meta):
            if kind == "i":
                if negated:
                    pi = z.get(self._art_col[i], ZERO)
                    dual_ineq[idx] = -pi
                else:
                    dual_ineq[idx] = z.get(self._slack_col[i], ZERO)
            else:
                pi = z.get(self._art_col[i], ZERO)
                dual_eq[idx] = -pi if negated else pi
        return dual_ineq, dual_eq


def solve_lp(n_vars, ineqs, eqs, objective) -> LPOutcome:
    """One-shot maximize over a fresh solver."""
    return SimplexSolver(n_vars, ineqs, eqs).maximize(objective)


def verify_certificate(n_vars, ineqs, eqs, objective, value, dual_ineq, dual_eq) -> bool:
    """Exact strong-duality check for a claimed optimum."""
    combo = [ZERO] * n_vars
    total = ZERO
    for (coef, b), y in zip(ineqs, dual_ineq):
        if y < 0:
            return False
        if y:
            for j, c in coef.items():
                combo[j] += y * c
            total += y * b
    for (coef, d), mu in zip(eqs, dual_eq):
        if mu:
            for j, c in coef.items():
                combo[j] += mu * c
            total += mu * d
    for j in range(n_vars):
        if combo[j] != objective.get(j, ZERO):
            return False
    return total == value
