"""Accuracy@k evaluation harness over classical and learned metrics.

For every non-standard word, all standard words are ranked ascending by
distance (ties broken by word id); accuracy@k is the percentage of
non-standard words whose true standard form appears in the top k.
"""

import csv
import json
from dataclasses import dataclass, field

import numpy as np

from . import editfam, gramfam
from .denoise import AutoencoderModel, encode_all
from .contextenc import EmbeddingMatrix
from .errors import BindingError, ConfigError
from .lexicon import Lexicon
from .vecdist import vector_metric

__all__ = [
    "MetricSpec",
    "EvalReport",
    "CLASSICAL_METRICS",
    "classical_distance",
    "evaluate_accuracy",
    "neighbor_curve",
    "qualitative_neighbors",
    "export_report",
    "load_report",
]

REPORT_VERSION = 1

# name -> distance(x, y, **params); Dice similarity is flipped to a distance
CLASSICAL_METRICS = {
    "levenshtein": lambda x, y: float(editfam.levenshtein(x, y)),
    "normalized-levenshtein": editfam.normalized_levenshtein,
    "damerau-levenshtein": lambda x, y: float(editfam.damerau_levenshtein(x, y)),
    "lcs": lambda x, y: float(editfam.lcs_distance(x, y)),
    "metric-lcs": editfam.metric_lcs,
    "qgram": lambda x, y, q=2: float(gramfam.qgram_distance(x, y, q)),
    "ngram": lambda x, y, n=2: gramfam.kondrak_ngram_distance(x, y, n),
    "dice": lambda x, y, n=2: 1.0 - gramfam.dice_coefficient(x, y, n),
    "jaccard": lambda x, y, n=2: gramfam.jaccard_distance(x, y, n),
    "cosine": gramfam.char_cosine_distance,
}


@dataclass
class MetricSpec:
    """A named metric configuration for one evaluation run.

    kind is one of: classical, learned-Da, learned-Dc. For learned kinds,
    params must carry the in-memory model under "model" plus an optional
    "vec_metric" (default cosine); for classical, params are forwarded to
    the metric function (n, q, ...).
    """

    name: str
    kind: str = "classical"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("classical", "learned-Da", "learned-Dc"):
            raise ConfigError(f"unknown metric kind: {self.kind!r}")
        if self.kind == "classical" and self.name not in CLASSICAL_METRICS:
            raise ConfigError(f"unknown classical metric: {self.name!r}")


@dataclass
class EvalReport:
    accuracies: dict  # metric name -> {k: percent}
    curves: dict = field(default_factory=dict)  # metric name -> [(k, percent)]
    qualitative: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)


def classical_distance(name: str, x: str, y: str, **params) -> float:
    return CLASSICAL_METRICS[name](x, y, **params)


_METRIC_PARAMS = {"qgram": ("q",), "ngram": ("n",), "dice": ("n",), "jaccard": ("n",)}


def _metric_params(name, params):
    allowed = _METRIC_PARAMS.get(name, ())
    return {k: v for k, v in params.items() if k in allowed}


def _safe(fn, x, y, params):
    # undefined comparisons (e.g. dice on strings shorter than n) rank last
    try:
        return fn(x, y, **params)
    except ValueError:
        return float("inf")


def _distance_rows(spec: MetricSpec, lex: Lexicon, query_ids):
    """Distances from each query id to every standard word, plus C ids."""
    standard = list(lex.standard_ids)
    if spec.kind == "classical":
        fn = CLASSICAL_METRICS[spec.name]
        params = _metric_params(spec.name, spec.params)
        rows = [
            [_safe(fn, lex.word_of(m), lex.word_of(c), params) for c in standard]
            for m in query_ids
        ]
        return np.array(rows), standard

    model = spec.params.get("model")
    if model is None:
        raise ConfigError(f"metric {spec.name!r} needs a model in params")
    if spec.kind == "learned-Da":
        if not isinstance(model, AutoencoderModel):
            raise ConfigError("learned-Da expects an AutoencoderModel")
        codes = encode_all(model, lex)  # checks the lexicon binding
    else:
        rows = model.U if isinstance(model, EmbeddingMatrix) else np.asarray(model)
        if isinstance(model, EmbeddingMatrix) and (
            model.lexicon_fingerprint != lex.fingerprint()
        ):
            raise BindingError("embedding was not trained against this lexicon")
        codes = rows
    d = vector_metric(spec.params.get("vec_metric", "cosine"))
    out = np.array(
        [[d(codes[m], codes[c]) for c in standard] for m in query_ids]
    )
    return out, standard


def _rank_standard(distances, standard):
    """Standard ids sorted by (distance, word id) for one distance row."""
    order = sorted(range(len(standard)), key=lambda i: (distances[i], standard[i]))
    return [standard[i] for i in order]


def evaluate_accuracy(spec: MetricSpec, lex: Lexicon, ks=(1, 5)) -> dict:
    """accuracy@k (percent) of recovering the true standard form."""
    queries = list(lex.nonstandard_ids)
    if not queries:
        raise ConfigError("lexicon has no non-standard words to evaluate")
    dist, standard = _distance_rows(spec, lex, queries)
    hits = {k: 0 for k in ks}
    for row, m in zip(dist, queries):
        ranked = _rank_standard(row, standard)
        truth = lex.standard_of[m]
        rank = ranked.index(truth) + 1
        for k in ks:
            if rank <= k:
                hits[k] += 1
    return {k: 100.0 * hits[k] / len(queries) for k in ks}


def neighbor_curve(spec: MetricSpec, lex: Lexicon, K: int):
    """[(k, accuracy@k)] for k = 1..K; non-decreasing in k."""
    if K < 1:
        raise ValueError("K must be >= 1")
    acc = evaluate_accuracy(spec, lex, ks=tuple(range(1, K + 1)))
    return [(k, acc[k]) for k in range(1, K + 1)]


def qualitative_neighbors(spec: MetricSpec, lex: Lexicon, queries, k=5):
    """Per-query top-k neighbor listings.

    D_a restricts candidates to standard words; D_c and classical metrics
    rank the whole vocabulary. Unknown query words yield an error entry
    without aborting the run.
    """
    results = {}
    for query in queries:
        if query not in lex:
            results[query] = {"error": "word not in lexicon"}
            continue
        qid = lex.id_of(query)
        if spec.kind == "learned-Da":
            candidates = list(lex.standard_ids)
        else:
            candidates = [i for i in range(len(lex)) if i != qid]
        dist, _ = _distance_rows_for_candidates(spec, lex, qid, candidates)
        ranked = sorted(zip(dist, candidates))[:k]
        results[query] = {
            "neighbors": [
                {"word": lex.word_of(c), "distance": float(d)} for d, c in ranked
            ]
        }
    return results


def _distance_rows_for_candidates(spec, lex, qid, candidates):
    if spec.kind == "classical":
        fn = CLASSICAL_METRICS[spec.name]
        params = _metric_params(spec.name, spec.params)
        return [
            _safe(fn, lex.word_of(qid), lex.word_of(c), params) for c in candidates
        ], candidates
    model = spec.params["model"]
    if spec.kind == "learned-Da":
        codes = encode_all(model, lex)
    else:
        codes = model.U if isinstance(model, EmbeddingMatrix) else np.asarray(model)
    d = vector_metric(spec.params.get("vec_metric", "cosine"))
    return [d(codes[qid], codes[c]) for c in candidates], candidates


def export_report(report: EvalReport, path, format: str = "json"):
    """Write the report as versioned JSON or flat CSV (metric,k,accuracy)."""
    if format == "json":
        payload = {
            "report_version": REPORT_VERSION,
            "accuracies": {
                name: {str(k): v for k, v in accs.items()}
                for name, accs in report.accuracies.items()
            },
            "curves": report.curves,
            "qualitative": report.qualitative,
            "metadata": report.metadata,
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
    elif format == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["metric", "k", "accuracy_percent"])
            for name, accs in report.accuracies.items():
                for k in sorted(accs):
                    writer.writerow([name, k, accs[k]])
    else:
        raise ValueError(f"unknown report format: {format!r}")


def load_report(path) -> EvalReport:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("report_version") != REPORT_VERSION:
        raise ConfigError("unsupported report version")
    return EvalReport(
        accuracies={
            name: {int(k): v for k, v in accs.items()}
            for name, accs in data["accuracies"].items()
        },
        curves={
            name: [tuple(point) for point in curve]
            for name, curve in data.get("curves", {}).items()
        },
        qualitative=data.get("qualitative", {}),
        metadata=data.get("metadata", {}),
    )
