"""Seeded Monte-Carlo trials over the channel models.

Trial ``i`` draws everything from ``random.Random((seed << 64) | i)``, so any
trial can be replayed on its own and results do not depend on how trials are
split across worker processes.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from spreadcodes.channel import MODELS, PLACEMENTS, ErasurePattern, apply_cec, apply_rec, sample_pattern
from spreadcodes.decode import decode_cec, decode_cec_with_deletions, decode_rec
from spreadcodes.errors import DecodingError
from spreadcodes.hybrid import HybridCode, hybrid_decode_cec, hybrid_encode, random_subspace
from spreadcodes.linalg import random_matrix
from spreadcodes.spread import SpreadCode, encode, nonzero_blocks, point_index, random_point

SEED_BITS = 64

# orientation each spread decoder works in: transposed?
MODEL_ORIENTATION = {"rec": True, "cec": False, "cec-del": True}


class ConfigError(ValueError):
    """Invalid or incompatible experiment configuration."""


def parse_code(spec: str, model: str | None = None, orient: str | None = None) -> SpreadCode | HybridCode:
    """Build the code for ``spec``, choosing the spread orientation from the model.

    An orientation given in the spec (``orient=``) or via ``orient`` must agree
    with the model; it is never flipped silently.
    """
    spec = spec.strip()
    if spec.startswith("hybrid:"):
        if model not in (None, "hybrid-cec"):
            raise ConfigError(f"hybrid codes are decoded in the CEC only; use --model hybrid-cec, not {model!r}")
        if orient is not None:
            raise ConfigError("--orient applies to spread codes only")
        return HybridCode.from_spec(spec)
    if not spec.startswith("spread:"):
        raise ConfigError(f"code spec must start with 'spread:' or 'hybrid:', got {spec!r}")
    if model == "hybrid-cec":
        raise ConfigError("--model hybrid-cec needs a hybrid: code spec")
    parts = dict(p.split("=", 1) for p in spec[len("spread:"):].replace(" ", "").split(",") if p)
    given = {o.upper() for o in (parts.pop("orient", None), orient) if o is not None}
    given = {"T" if o == "PT" else o for o in given}
    if len(given) > 1:
        raise ConfigError("conflicting orientations in --code and --orient")
    wanted = MODEL_ORIENTATION.get(model) if model else None
    if given:
        transposed = given.pop() == "T"
        if wanted is not None and transposed != wanted:
            need = "T" if wanted else "P"
            raise ConfigError(f"model {model!r} needs a spread in orientation {need}; drop orient= to auto-select it")
    else:
        transposed = bool(wanted)
    body = ",".join(f"{k}={v}" for k, v in parts.items())
    try:
        return SpreadCode.from_spec(f"spread:{body},orient={'T' if transposed else 'P'}")
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad spread spec {spec!r}: {exc}") from None


def default_model(code: SpreadCode | HybridCode, deletions: int = 0) -> str:
    if isinstance(code, HybridCode):
        return "hybrid-cec"
    if deletions:
        return "cec-del"
    return "rec" if code.transposed else "cec"


@dataclass(frozen=True)
class ExperimentConfig:
    code: str
    model: str | None = None
    erasures: int | None = 0
    placement: str = "uniform"
    deletions: int = 0
    trials: int = 1000
    seed: int = 0
    orient: str | None = None

    def resolve(self) -> tuple[SpreadCode | HybridCode, str]:
        code = parse_code(self.code, self.model, self.orient)
        model = self.model or default_model(code, self.deletions)
        if model not in MODELS:
            raise ConfigError(f"unknown model {model!r}; expected one of {MODELS}")
        if self.placement not in PLACEMENTS:
            raise ConfigError(f"unknown placement {self.placement!r}; expected one of {PLACEMENTS}")
        k = code.k
        if not 0 <= self.deletions < k:
            raise ConfigError(f"--deletions must be in 0..{k - 1}")
        if self.deletions and model == "rec":
            raise ConfigError("the REC decoder assumes a full-rank channel; use --model cec-del for deletions")
        if self.deletions and model == "cec":
            raise ConfigError("decode_cec assumes a full-rank channel; use --model cec-del for deletions")
        if self.placement == "per_block" and isinstance(code, HybridCode):
            raise ConfigError("per_block placement is defined for spread codes only")
        if self.trials < 0:
            raise ConfigError("--trials must be nonnegative")
        if not 0 <= self.seed < 1 << SEED_BITS:
            raise ConfigError(f"--seed must fit in {SEED_BITS} bits")
        if self.erasures is not None and not 0 <= self.erasures <= k * code.n:
            raise ConfigError(f"--erasures must be in 0..{k * code.n}")
        return code, model


@dataclass(frozen=True)
class TrialResult:
    index: int
    message: str
    weight: int
    erased_columns: int
    status: str
    detail: str = ""
    seconds: float = field(default=0.0, compare=False)

    def row(self, timing: bool = False) -> dict:
        d = asdict(self)
        if timing:
            d["decode_ms"] = round(d.pop("seconds") * 1000, 4)
        else:
            d.pop("seconds")
        return d


def trial_rng_seed(seed: int, index: int) -> int:
    return (seed << SEED_BITS) | index


def _weight(cfg: ExperimentConfig, code, model, rng) -> int:
    if cfg.erasures is not None:
        return cfg.erasures
    k, n = code.k, code.n
    if cfg.placement == "worst_rec":
        return rng.randint(0, k - 1)
    if cfg.placement == "per_block":
        return rng.randint(0, (code.m - 1) * (k - cfg.deletions - 1) * k)
    if cfg.placement == "worst_cec":
        return rng.randint(0, n - code.n_prime if isinstance(code, HybridCode) else n)
    return rng.randint(0, k * n)


def run_trial(cfg: ExperimentConfig, code, model: str, index: int) -> TrialResult:
    import random

    rng = random.Random(trial_rng_seed(cfg.seed, index))
    F = code.field
    k, n = code.k, code.n
    A = random_matrix(F, k, k, rank=k - cfg.deletions, rng=rng)
    if isinstance(code, HybridCode):
        U = random_subspace(code, rng)
        X = hybrid_encode(code, U)
        message = ";".join(" ".join(map(str, r)) for r in U.basis.rows)
    else:
        u = random_point(code, rng)
        X = encode(code, u)
        message = str(point_index(code, u))
    weight = _weight(cfg, code, model, rng)
    keep = rng.choice(nonzero_blocks(u)) if cfg.placement == "per_block" else None
    limit = k - cfg.deletions - 1 if cfg.placement == "per_block" else None
    E = sample_pattern(k, n, weight, cfg.placement, rng, limit=limit, width=k, keep_block=keep)
    obs = apply_rec(X, A, E) if model == "rec" else apply_cec(X, A, E)
    start = time.perf_counter()
    try:
        if model == "rec":
            got = decode_rec(code, obs)
        elif model == "cec":
            got = decode_cec(code, obs)
        elif model == "cec-del":
            got = decode_cec_with_deletions(code, obs)
        else:
            got = hybrid_decode_cec(code, obs)
    except DecodingError as exc:
        elapsed = time.perf_counter() - start
        return TrialResult(index, message, E.weight, len(E.erased_columns()), "refused", type(exc).__name__, elapsed)
    elapsed = time.perf_counter() - start
    ok = got == U if isinstance(code, HybridCode) else got == u
    return TrialResult(index, message, E.weight, len(E.erased_columns()), "ok" if ok else "wrong", "", elapsed)


def _run_range(args) -> list[TrialResult]:
    cfg, start, stop = args
    code, model = cfg.resolve()
    return [run_trial(cfg, code, model, i) for i in range(start, stop)]


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    model: str
    results: list[TrialResult]

    @property
    def successes(self) -> int:
        return sum(r.status == "ok" for r in self.results)

    @property
    def refused(self) -> int:
        return sum(r.status == "refused" for r in self.results)

    @property
    def wrong(self) -> int:
        return sum(r.status == "wrong" for r in self.results)

    @property
    def success_rate(self) -> float | None:
        return self.successes / len(self.results) if self.results else None

    @property
    def mean_decode_ms(self) -> float | None:
        if not self.results:
            return None
        return 1000 * sum(r.seconds for r in self.results) / len(self.results)

    def summary(self, timing: bool = False) -> dict:
        out = {
            "trials": len(self.results),
            "successes": self.successes,
            "refused": self.refused,
            "wrong": self.wrong,
            "success_rate": self.success_rate,
        }
        if timing:
            out["mean_decode_ms"] = self.mean_decode_ms
        return out


def run_experiment(cfg: ExperimentConfig, workers: int = 1) -> ExperimentReport:
    code, model = cfg.resolve()
    if workers > 1 and cfg.trials > 1:
        step = -(-cfg.trials // workers)
        jobs = [(cfg, s, min(s + step, cfg.trials)) for s in range(0, cfg.trials, step)]
        with ProcessPoolExecutor(workers) as pool:
            results = [r for chunk in pool.map(_run_range, jobs) for r in chunk]
    else:
        results = [run_trial(cfg, code, model, i) for i in range(cfg.trials)]
    return ExperimentReport(cfg, model, results)
