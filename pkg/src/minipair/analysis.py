"""Learning-curve analysis: saturating-exponential fits, an optional
U-shape correction term, difficulty classification, and the prefix /
continuation decomposition of MLP differences.

The saturation model is
    F(n) = p_inf - (p_inf - p0) * exp(-alpha * n**beta)
and the U-shape variant adds k * u((n - n0) / s) with u(x) = -x / (1 + x^2).
Fitting works on log-transformed rate parameters internally (token counts
span many decades) with a fixed multi-start grid, so results are
deterministic for identical inputs.
"""

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .errors import AnalysisError
from .scoring import score_paradigm, score_sentences

U_MARGIN_DEFAULT = 0.05
# Below this RMSE the saturation model already explains the data to numeric
# noise; residual ratios are meaningless there and the U-term is never
# warranted.
_RESIDUAL_FLOOR = 1e-8

EASY_THRESHOLD = 0.85
MEDIUM_THRESHOLD = 0.70
RHO_THRESHOLD = 0.80


@dataclass(frozen=True)
class TrajectoryPoint:
    tokens_seen: float
    accuracy: float
    model_params: int = 0
    seed_id: str = ""


@dataclass(frozen=True)
class SaturationFit:
    p_inf: float
    p0: float
    alpha: float
    beta: float
    residual: float
    converged: bool = True

    def predict(self, n):
        return _sat_eval(np.asarray(n, dtype=float),
                         self.p_inf, self.p0, self.alpha, self.beta)

    def to_dict(self):
        return {"p_inf": self.p_inf, "p0": self.p0, "alpha": self.alpha,
                "beta": self.beta, "residual": self.residual,
                "converged": self.converged}


@dataclass(frozen=True)
class UShapeFit:
    base: SaturationFit
    k: float
    n0: float
    s: float
    residual: float
    warranted: bool
    converged: bool = True

    def predict(self, n):
        n = np.asarray(n, dtype=float)
        return self.base.predict(n) + self.k * u_term((n - self.n0) / self.s)

    def to_dict(self):
        d = self.base.to_dict()
        d.update({"k": self.k, "n0": self.n0, "s": self.s,
                  "residual": self.residual, "warranted": self.warranted,
                  "converged": self.converged})
        return d


@dataclass(frozen=True)
class ParadigmClass:
    paradigm_id: str
    acc_best: float
    rho: float
    label: str
    rho_undefined: bool = False

    def to_dict(self):
        return {"paradigm_id": self.paradigm_id, "acc_best": self.acc_best,
                "rho": None if self.rho_undefined else self.rho,
                "label": self.label, "rho_undefined": self.rho_undefined}


@dataclass(frozen=True)
class RegionDelta:
    checkpoint_tokens: float
    prefix_delta: float
    continuation_delta: float
    accuracy: float

    def to_dict(self):
        return {"checkpoint_tokens": self.checkpoint_tokens,
                "prefix_delta": self.prefix_delta,
                "continuation_delta": self.continuation_delta,
                "accuracy": self.accuracy}


def u_term(x):
    """-x / (1 + x^2): a single dip (then symmetric bump) around zero."""
    x = np.asarray(x, dtype=float)
    return -x / (1.0 + x * x)


def _sat_eval(n, p_inf, p0, alpha, beta):
    n = np.asarray(n, dtype=float)
    with np.errstate(over="ignore"):
        expo = np.where(n > 0, alpha * np.power(np.maximum(n, 1e-300), beta), 0.0)
    return p_inf - (p_inf - p0) * np.exp(-expo)


def _prepare_points(points, min_distinct):
    ns = np.array([p.tokens_seen for p in points], dtype=float)
    ys = np.array([p.accuracy for p in points], dtype=float)
    if len(set(ns.tolist())) < min_distinct:
        raise AnalysisError(
            f"need at least {min_distinct} points with distinct tokens_seen")
    order = np.argsort(ns, kind="stable")
    return ns[order], ys[order]


def _rmse(res):
    return float(np.sqrt(np.mean(res ** 2)))


_BETA_STARTS = (0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 3.0)


def fit_saturation(points, max_nfev=2000):
    """Bounded least squares for the saturation model, fixed 8-start grid."""
    ns, ys = _prepare_points(points, 4)
    if float(np.max(ys) - np.min(ys)) == 0.0:
        # Flat data: the model collapses to a constant, exactly.
        c = float(ys[0])
        return SaturationFit(c, c, 1.0, 1.0, 0.0, True)

    log_mid = float(np.median(np.log(np.maximum(ns, 1.0))))
    p_inf0 = float(np.clip(np.max(ys), 1e-6, 1.0))
    p00 = float(np.clip(ys[0], 0.0, 1.0 - 1e-6))

    def residuals(theta):
        p_inf, p0, la, beta = theta
        return _sat_eval(ns, p_inf, p0, math.exp(la), beta) - ys

    lo = [0.0, 0.0, -400.0, 1e-3]
    hi = [1.0, 1.0, 50.0, 10.0]
    best = None
    for idx, beta0 in enumerate(_BETA_STARTS):
        la0 = float(np.clip(-beta0 * log_mid, lo[2] + 1, hi[2] - 1))
        x0 = [p_inf0, p00, la0, beta0]
        sol = least_squares(residuals, x0, bounds=(lo, hi), max_nfev=max_nfev)
        if best is None or sol.cost < best.cost:
            best = sol
        if _rmse(best.fun) < 1e-10:
            break
    p_inf, p0, la, beta = best.x
    converged = bool(best.status > 0)
    return SaturationFit(float(p_inf), float(p0), math.exp(la), float(beta),
                         _rmse(best.fun), converged)


def fit_ushape(points, margin=U_MARGIN_DEFAULT, max_nfev=4000):
    """Full model fit; the U-term is warranted when it beats the plain
    saturation fit's RMSE by more than `margin` (relative)."""
    ns, ys = _prepare_points(points, 7)
    base = fit_saturation(points)

    def residuals(theta):
        p_inf, p0, la, beta, k, ln0, ls = theta
        pred = _sat_eval(ns, p_inf, p0, math.exp(la), beta)
        pred = pred + k * u_term((ns - math.exp(ln0)) / math.exp(ls))
        return pred - ys

    lo = [0.0, 0.0, -400.0, 1e-3, -1.0, 0.0, 0.0]
    hi = [1.0, 1.0, 50.0, 10.0, 1.0, 60.0, 60.0]
    pos = ns[ns > 0]
    qs = (np.quantile(pos, [0.25, 0.5, 0.75]) if len(pos)
          else np.array([1.0, 1.0, 1.0]))
    log_mid = float(np.median(np.log(np.maximum(ns, 1.0))))
    p_inf0 = float(np.clip(np.max(ys), 1e-6, 1.0))
    p00 = float(np.clip(ys[0], 0.0, 1.0 - 1e-6))
    # The base fit alone is a poor anchor: its beta can sit in the wrong
    # basin once the dip distorts the curve, so beta is re-gridded here.
    starts = []
    for beta0 in (0.25, 0.5, 0.75, 1.0, 1.5, 2.0):
        la0 = float(np.clip(-beta0 * log_mid, lo[2] + 1, hi[2] - 1))
        for k_start in (0.05, -0.05):
            for n0_start in qs:
                starts.append([
                    p_inf0, p00, la0, beta0, k_start,
                    math.log(max(n0_start, 1.0)),
                    math.log(max(n0_start / 3.0, 1.0)),
                ])
    # Cheap screening pass over the grid, then a full-budget polish from the
    # single best start; running every start to convergence is ~10x slower.
    best = None
    for x0 in starts:
        sol = least_squares(residuals, x0, bounds=(lo, hi), max_nfev=300)
        if best is None or sol.cost < best.cost:
            best = sol
        if _rmse(best.fun) < 1e-10:
            break
    sol = least_squares(residuals, best.x, bounds=(lo, hi), max_nfev=max_nfev)
    if sol.cost < best.cost:
        best = sol
    p_inf, p0, la, beta, k, ln0, ls = best.x
    residual = _rmse(best.fun)
    sat = SaturationFit(float(p_inf), float(p0), math.exp(la), float(beta),
                        residual, bool(best.status > 0))
    warranted = (base.residual > _RESIDUAL_FLOOR
                 and residual < (1.0 - margin) * base.residual)
    return UShapeFit(sat, float(k), math.exp(ln0), math.exp(ls),
                     residual, warranted, bool(best.status > 0))


def pearson(xs, ys):
    """Sample Pearson correlation; errors out on zero variance."""
    if len(xs) != len(ys) or len(xs) < 2:
        raise AnalysisError("pearson needs two equal-length lists of >= 2 values")
    n = len(xs)
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    dx = [x - mx for x in xs]
    dy = [y - my for y in ys]
    sxx = math.fsum(d * d for d in dx)
    syy = math.fsum(d * d for d in dy)
    if sxx == 0.0 or syy == 0.0:
        raise AnalysisError("undefined correlation: zero variance input")
    r = math.fsum(a * b for a, b in zip(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def classify_paradigm(acc_by_size, paradigm_id=""):
    """Difficulty label from best accuracy and the accuracy-vs-log-size
    correlation. Thresholds are strict inequalities."""
    if len(acc_by_size) < 2:
        raise AnalysisError("classification needs at least 2 model sizes")
    sizes = sorted(acc_by_size)
    accs = [acc_by_size[s] for s in sizes]
    acc_best = max(accs)
    rho_undefined = False
    try:
        rho = pearson([math.log(s) for s in sizes], accs)
    except AnalysisError:
        rho = 0.0
        rho_undefined = True
    if acc_best > EASY_THRESHOLD:
        label = "Easy"
    elif acc_best > MEDIUM_THRESHOLD:
        label = "Medium"
    elif not rho_undefined and rho > RHO_THRESHOLD:
        label = "Difficult"
    else:
        label = "Other"
    return ParadigmClass(paradigm_id, acc_best, rho, label, rho_undefined)


def _split_for(pair, split, index):
    if isinstance(split, int):
        return split, split
    sg, sb = split[index]
    return sg, sb


def region_decomposition(backend, pairs, split, checkpoint_tokens=0.0):
    """Mean MLP advantage of the good sentence on the prefix and on the
    continuation (conditional on the prefix), plus full-sentence accuracy.

    `split` is a backend-token index: either one int for all pairs or a list
    of (split_good, split_bad) per pair. split == sentence length reduces
    prefix_delta to the full-sentence MLP difference.
    """
    if not pairs:
        raise AnalysisError("no pairs")
    sentences = []
    for p in pairs:
        sentences.append(p.good.text)
        sentences.append(p.bad.text)
    scores = score_sentences(backend, sentences)
    prefix_deltas = []
    cont_deltas = []
    for i, p in enumerate(pairs):
        g, b = scores[2 * i], scores[2 * i + 1]
        sg, sb = _split_for(p, split, i)
        for name, sc, k in (("good", g, sg), ("bad", b, sb)):
            if k < 1 or k > len(sc.tokens):
                raise AnalysisError(
                    f"pair {i}: split {k} out of range for {name} sentence "
                    f"of {len(sc.tokens)} tokens", pair=i)
        g_prefix = math.fsum(g.token_logprobs[:sg]) / sg
        b_prefix = math.fsum(b.token_logprobs[:sb]) / sb
        prefix_deltas.append(g_prefix - b_prefix)
        g_rest = len(g.tokens) - sg
        b_rest = len(b.tokens) - sb
        if g_rest == 0 and b_rest == 0:
            cont_deltas.append(0.0)
        elif g_rest == 0 or b_rest == 0:
            raise AnalysisError(
                f"pair {i}: split leaves an empty continuation on one side only",
                pair=i)
        else:
            g_cont = math.fsum(g.token_logprobs[sg:]) / g_rest
            b_cont = math.fsum(b.token_logprobs[sb:]) / b_rest
            cont_deltas.append(g_cont - b_cont)
    accuracy = score_paradigm(backend, pairs).accuracy
    return RegionDelta(checkpoint_tokens,
                       math.fsum(prefix_deltas) / len(pairs),
                       math.fsum(cont_deltas) / len(pairs),
                       accuracy)


# ---------------------------------------------------------------------------
# Trajectory file I/O

def load_trajectories(stream):
    """JSONL records {paradigm_id, model_params, seed_id, tokens_seen,
    accuracy} grouped by paradigm_id, record order preserved."""
    groups = {}
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            point = TrajectoryPoint(
                tokens_seen=float(obj["tokens_seen"]),
                accuracy=float(obj["accuracy"]),
                model_params=int(obj.get("model_params", 0)),
                seed_id=str(obj.get("seed_id", "")))
            pid = obj["paradigm_id"]
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise AnalysisError(f"line {lineno}: bad trajectory record: {exc}",
                                line=lineno)
        groups.setdefault(pid, []).append(point)
    return groups


def average_curve(points):
    """Average accuracy per tokens_seen across models/seeds."""
    by_n = {}
    for p in points:
        by_n.setdefault(p.tokens_seen, []).append(p.accuracy)
    return [TrajectoryPoint(n, math.fsum(v) / len(v))
            for n, v in sorted(by_n.items())]
