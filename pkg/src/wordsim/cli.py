"""Command-line entry point.

Subcommands: dist, nearest, train-ae, train-ctx, train-combined, eval.
Exit codes: 0 success, 2 usage error, 3 data/binding error, 4 numeric
abort.
"""

import argparse
import datetime
import os
import sys

from . import contextenc, denoise, evalharness
from .errors import BindingError, NumericError, ParseError, WordsimError
from .evalharness import CLASSICAL_METRICS, EvalReport, MetricSpec
from .lexicon import load_corpus, load_lexicon
from .neural import TrainConfig

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4


def _parser():
    p = argparse.ArgumentParser(prog="wordsim")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1, help="worker cap (advisory)")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dist", help="distance between two strings or lexicon words")
    d.add_argument("--metric", required=True)
    d.add_argument("--n", type=int, default=2, help="gram length for n-gram metrics")
    d.add_argument("--q", type=int, default=2, help="gram length for the q-gram metric")
    d.add_argument("--vec-metric", choices=["L1", "L2", "cosine"], default="cosine")
    d.add_argument("--model", help="autoencoder model file (metric Da)")
    d.add_argument("--embedding", help="embedding file (metric Dc)")
    d.add_argument("--lexicon", help="pairs TSV (required for Da/Dc)")
    d.add_argument("x")
    d.add_argument("y")

    n = sub.add_parser("nearest", help="nearest standard words to a query")
    n.add_argument("--model", help="autoencoder model file")
    n.add_argument("--embedding", help="embedding file")
    n.add_argument("--lexicon", required=True)
    n.add_argument("--query", required=True)
    n.add_argument("--k", type=int, default=5)
    n.add_argument("--vec-metric", choices=["L1", "L2", "cosine"], default="cosine")

    ta = sub.add_parser("train-ae", help="train the denoising autoencoder")
    ta.add_argument("--lexicon", required=True)
    ta.add_argument("--code-size", type=int, default=11)
    ta.add_argument("--depth", type=int, default=7)
    ta.add_argument("--batch", type=int, default=100)
    ta.add_argument("--lr", type=float, default=0.01)
    ta.add_argument("--epochs", type=int, default=50)
    ta.add_argument("--out", required=True)

    tc = sub.add_parser("train-ctx", help="train the context encoder")
    tc.add_argument("--lexicon", required=True)
    tc.add_argument("--corpus", required=True)
    tc.add_argument("--embed-size", type=int, default=11)
    tc.add_argument("--window", type=int, default=4)
    tc.add_argument("--hidden", type=int, default=32)
    tc.add_argument("--batch", type=int, default=100)
    tc.add_argument("--lr", type=float, default=0.01)
    tc.add_argument("--epochs", type=int, default=5)
    tc.add_argument("--out", required=True)

    tb = sub.add_parser("train-combined", help="combined autoencoder + context training")
    tb.add_argument("--lexicon", required=True)
    tb.add_argument("--corpus", required=True)
    tb.add_argument("--code-size", type=int, default=11)
    tb.add_argument("--depth", type=int, default=7)
    tb.add_argument("--window", type=int, default=4)
    tb.add_argument("--hidden", type=int, default=32)
    tb.add_argument("--rounds", type=int, default=5)
    tb.add_argument("--blend", type=float, default=0.5)
    tb.add_argument("--batch", type=int, default=100)
    tb.add_argument("--lr", type=float, default=0.01)
    tb.add_argument("--out", required=True)

    e = sub.add_parser("eval", help="accuracy@k evaluation")
    e.add_argument("--lexicon", required=True)
    e.add_argument(
        "--metrics",
        default="all-classical",
        help="comma-separated metric names, or all-classical",
    )
    e.add_argument("--ks", default="1,5", help="comma-separated k values")
    e.add_argument("--model", help="autoencoder model for metric Da")
    e.add_argument("--embedding", help="embedding file for metric Dc")
    e.add_argument("--vec-metric", choices=["L1", "L2", "cosine"], default="cosine")
    e.add_argument("--n", type=int, default=2)
    e.add_argument("--out")
    return p


def _timestamp():
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


def _cmd_dist(args):
    name = args.metric
    if name in CLASSICAL_METRICS:
        params = {}
        if name in ("ngram", "dice", "jaccard"):
            params["n"] = args.n
        elif name == "qgram":
            params["q"] = args.q
        value = evalharness.classical_distance(name, args.x, args.y, **params)
        print(f"{name}: {value}")
        return EXIT_OK
    if name in ("Da", "Dc"):
        if not args.lexicon:
            raise WordsimError("--lexicon is required for learned metrics")
        lex = load_lexicon(args.lexicon)
        i, j = lex.id_of(args.x), lex.id_of(args.y)
        if name == "Da":
            if not args.model:
                raise WordsimError("--model is required for metric Da")
            model = denoise.load_autoencoder(args.model)
            value = denoise.distance_Da(model, lex, i, j, args.vec_metric)
        else:
            if not args.embedding:
                raise WordsimError("--embedding is required for metric Dc")
            emb = contextenc.load_embedding(args.embedding)
            if emb.lexicon_fingerprint != lex.fingerprint():
                raise BindingError("embedding was not trained against this lexicon")
            value = contextenc.distance_Dc(emb, i, j, args.vec_metric)
        print(f"{name}: {value}")
        return EXIT_OK
    known = sorted(CLASSICAL_METRICS) + ["Da", "Dc"]
    print(f"unknown metric {name!r}; choose from {known}", file=sys.stderr)
    return EXIT_USAGE


def _cmd_nearest(args):
    lex = load_lexicon(args.lexicon)
    if args.model:
        source = denoise.load_autoencoder(args.model)
    elif args.embedding:
        emb = contextenc.load_embedding(args.embedding)
        if emb.lexicon_fingerprint != lex.fingerprint():
            raise BindingError("embedding was not trained against this lexicon")
        source = emb.U
    else:
        raise WordsimError("nearest needs --model or --embedding")
    qid = lex.id_of(args.query.casefold())
    for word_id, dist in denoise.nearest_standard(
        source, lex, qid, k=args.k, vec_metric=args.vec_metric
    ):
        print(f"{lex.word_of(word_id)}\t{dist}")
    return EXIT_OK


def _with_cleanup(out_path, fn):
    try:
        return fn()
    except BaseException:
        if out_path and os.path.exists(out_path):
            os.unlink(out_path)
        raise


def _cmd_train_ae(args):
    lex = load_lexicon(args.lexicon)
    model = denoise.build_autoencoder(
        lex, code_size=args.code_size, depth=args.depth, seed=args.seed
    )
    config = TrainConfig(
        batch_size=args.batch,
        learning_rate=args.lr,
        epochs=args.epochs,
        seed=args.seed,
    )

    def run():
        trace = denoise.train_autoencoder(model, lex, config)
        denoise.save_autoencoder(
            model,
            args.out,
            extra_metadata={
                "created": _timestamp(),
                "batch_size": config.batch_size,
                "learning_rate": config.learning_rate,
                "epochs": config.epochs,
                "seed": config.seed,
                "final_loss": trace[-1],
            },
        )
        print(f"trained autoencoder: final loss {trace[-1]:.6f} -> {args.out}")
        return EXIT_OK

    return _with_cleanup(args.out, run)


def _cmd_train_ctx(args):
    lex = load_lexicon(args.lexicon)
    corpus = load_corpus(args.corpus, lex)
    model = contextenc.build_context_model(
        lex,
        n_embed=args.embed_size,
        window=args.window,
        hidden_size=args.hidden,
        seed=args.seed,
    )
    config = TrainConfig(
        batch_size=args.batch,
        learning_rate=args.lr,
        epochs=args.epochs,
        seed=args.seed,
    )

    def run():
        trace = contextenc.train_context(model, corpus, config)
        emb = contextenc.EmbeddingMatrix(
            U=model.U.copy(),
            lexicon_fingerprint=model.lexicon_fingerprint,
            metadata={
                "created": _timestamp(),
                "window": model.window,
                "seed": config.seed,
                "final_log_likelihood": trace[-1],
            },
        )
        contextenc.save_embedding(emb, args.out)
        print(
            f"trained context encoder: final mean log-likelihood "
            f"{trace[-1]:.6f} -> {args.out}"
        )
        return EXIT_OK

    return _with_cleanup(args.out, run)


def _cmd_train_combined(args):
    lex = load_lexicon(args.lexicon)
    corpus = load_corpus(args.corpus, lex)
    ae = denoise.build_autoencoder(
        lex, code_size=args.code_size, depth=args.depth, seed=args.seed
    )
    ctx = contextenc.build_context_model(
        lex,
        n_embed=args.code_size,
        window=args.window,
        hidden_size=args.hidden,
        seed=args.seed,
    )
    config = TrainConfig(batch_size=args.batch, learning_rate=args.lr, seed=args.seed)

    def run():
        emb = contextenc.train_combined(
            ctx, ae, lex, corpus, config, rounds=args.rounds, blend=args.blend
        )
        emb.metadata["created"] = _timestamp()
        contextenc.save_embedding(emb, args.out)
        print(f"combined training done: {args.rounds} rounds -> {args.out}")
        return EXIT_OK

    return _with_cleanup(args.out, run)


def _cmd_eval(args):
    lex = load_lexicon(args.lexicon)
    if args.metrics == "all-classical":
        names = sorted(CLASSICAL_METRICS)
    else:
        names = [m.strip() for m in args.metrics.split(",") if m.strip()]
    ks = tuple(int(k) for k in args.ks.split(","))
    specs = []
    for name in names:
        if name == "Da":
            if not args.model:
                raise WordsimError("metric Da needs --model")
            model = denoise.load_autoencoder(args.model)
            specs.append(
                MetricSpec(
                    name="Da",
                    kind="learned-Da",
                    params={"model": model, "vec_metric": args.vec_metric},
                )
            )
        elif name == "Dc":
            if not args.embedding:
                raise WordsimError("metric Dc needs --embedding")
            emb = contextenc.load_embedding(args.embedding)
            specs.append(
                MetricSpec(
                    name="Dc",
                    kind="learned-Dc",
                    params={"model": emb, "vec_metric": args.vec_metric},
                )
            )
        else:
            specs.append(MetricSpec(name=name, params={"n": args.n, "q": args.n}))
    accuracies = {}
    for spec in specs:
        accuracies[spec.name] = evalharness.evaluate_accuracy(spec, lex, ks=ks)
        line = "  ".join(f"acc@{k}={v:.2f}%" for k, v in accuracies[spec.name].items())
        print(f"{spec.name}: {line}")
    if args.out:
        report = EvalReport(
            accuracies=accuracies,
            metadata={
                "lexicon": os.path.abspath(args.lexicon),
                "lexicon_fingerprint": lex.fingerprint(),
                "seed": args.seed,
                "gram_n": args.n,
                "created": _timestamp(),
            },
        )
        fmt = "csv" if args.out.endswith(".csv") else args.format
        evalharness.export_report(report, args.out, format=fmt)
        print(f"report written to {args.out}")
    return EXIT_OK


_COMMANDS = {
    "dist": _cmd_dist,
    "nearest": _cmd_nearest,
    "train-ae": _cmd_train_ae,
    "train-ctx": _cmd_train_ctx,
    "train-combined": _cmd_train_combined,
    "eval": _cmd_eval,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except NumericError as exc:
        print(f"numeric abort: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (WordsimError, OSError, KeyError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
