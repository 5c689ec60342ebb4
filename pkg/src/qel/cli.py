"""Command-line entry point: build, train, tune, link, eval.

Every command accepts ``--config PATH`` (flat ``key=value`` file) and
flags that mirror the config keys. Precedence: flag > config file > default.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
"""
import argparse
import logging
import sys
from dataclasses import dataclass, fields

from .corpus import CorpusFormatError
from .evaluate import average_f1, format_annotation, read_dataset
from .features import EmbeddingTable, load_embeddings
from .pipeline import Linker, build, load_artifacts
from .ranker import load_model, save_model

log = logging.getLogger("qel")

EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class PipelineConfig:
    corpus_path: str = None
    index_path: str = "index.qelidx"
    stats_path: str = "stats"
    resources_path: str = "resources.json"
    embeddings_path: str = None
    model_path: str = "model.qelsvr"
    k: int = 700
    threshold: float = 0.56
    c: float = 1.0
    eps: float = 0.1
    workers: int = 1

    def validate(self):
        if self.k < 1:
            raise UsageError("k must be >= 1")
        if self.threshold != self.threshold or abs(self.threshold) == float("inf"):
            raise UsageError("threshold must be finite")
        if self.c <= 0 or self.eps < 0 or self.workers < 1:
            raise UsageError("need c > 0, eps >= 0, workers >= 1")
        return self


_TYPES = {f.name: (f.type if f.type in (int, float) else str) for f in fields(PipelineConfig)}


def read_config_file(path):
    values = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key = key.strip().lower()
            if not sep or key not in _TYPES:
                raise UsageError(f"{path}:{line_no}: bad config entry {line!r}")
            try:
                values[key] = _TYPES[key](value.strip())
            except ValueError:
                raise UsageError(f"{path}:{line_no}: bad value for {key}") from None
    return values


def resolve_config(args):
    """Merge defaults, config file and flags; also report which keys were set
    explicitly (file or flag)."""
    merged = {}
    if args.config:
        merged.update(read_config_file(args.config))
    for name in _TYPES:
        value = getattr(args, name, None)
        if value is not None:
            merged[name] = value
    return PipelineConfig(**merged).validate(), set(merged)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(p):
    p.add_argument("--config")
    for name, typ in _TYPES.items():
        flag = "--" + name.replace("_", "-")
        p.add_argument(flag, dest=name, type=typ, default=None)
    p.add_argument("--explain", action="store_true")
    p.add_argument("-v", "--verbose", action="store_true")


def make_parser():
    parser = _Parser(prog="qel", description="Entity linking for short queries "
                     "via annotated-sentence search.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="build index, link stats and entity resources")
    _add_common(p)

    p = sub.add_parser("train", help="train the candidate regression model")
    p.add_argument("dataset")
    _add_common(p)

    p = sub.add_parser("tune", help="grid-search K and threshold on a dev set")
    p.add_argument("dataset")
    p.add_argument("--k-grid", required=True)
    p.add_argument("--threshold-grid", required=True)
    p.add_argument("--output", help="grid TSV path (default stdout)")
    p.add_argument("--update-model", action="store_true",
                   help="store the best threshold in the model file")
    _add_common(p)

    p = sub.add_parser("link", help="annotate queries")
    p.add_argument("queries")
    p.add_argument("--output")
    _add_common(p)

    p = sub.add_parser("eval", help="average F1 of annotations against gold")
    p.add_argument("gold")
    p.add_argument("annotations")
    p.add_argument("--report", help="per-query TSV report path")
    _add_common(p)
    return parser


def _linker(cfg, with_model):
    index, stats, res = load_artifacts(cfg.index_path, cfg.stats_path, cfg.resources_path)
    emb = load_embeddings(cfg.embeddings_path) if cfg.embeddings_path else EmbeddingTable(0)
    model = None
    if with_model:
        model = load_model(cfg.model_path)
    return Linker(index, stats, res, emb, model, cfg.k)


def _write(path, text):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _floats(text, cast):
    try:
        return [cast(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad grid {text!r}") from None


def cmd_build(cfg, args):
    if not cfg.corpus_path:
        raise UsageError("build needs --corpus-path")
    index, stats, _ = build(cfg.corpus_path, cfg.index_path, cfg.stats_path,
                            cfg.resources_path, workers=cfg.workers)
    log.info("indexed %d sentences, %d anchors", index.doc_count, len(stats.link))


def cmd_train(cfg, args):
    linker = _linker(cfg, with_model=False)
    model = linker.train(read_dataset(args.dataset), C=cfg.c, eps=cfg.eps,
                         threshold=cfg.threshold, workers=cfg.workers)
    save_model(model, cfg.model_path)
    log.info("trained on dataset %s in %d epochs", args.dataset, model.n_iter)


def cmd_tune(cfg, args):
    linker = _linker(cfg, with_model=True)
    ks = _floats(args.k_grid, int)
    ts = _floats(args.threshold_grid, float)
    if not ks or not ts:
        raise UsageError("empty tuning grid")
    if min(ks) < 1:
        raise UsageError("K values must be >= 1")
    best, grid = linker.tune(read_dataset(args.dataset), ks, ts, workers=cfg.workers)
    rows = ["k\tthreshold\tf1"] + [f"{k}\t{t!r}\t{f:.6f}" for k, t, f in grid]
    _write(args.output, "\n".join(rows) + "\n")
    print(f"best\tk={best[0]}\tthreshold={best[1]!r}\tf1={best[2]:.6f}", file=sys.stderr)
    if args.update_model:
        save_model(linker.with_threshold(best[1]).model, cfg.model_path)


def _read_queries(path):
    with open(path, encoding="utf-8") as fh:
        return [line.rstrip("\r\n").split("\t")[0] for line in fh
                if line.strip() and not line.startswith("#")]


def cmd_link(cfg, args, explicit):
    linker = _linker(cfg, with_model=True)
    threshold = cfg.threshold if "threshold" in explicit else None
    queries = _read_queries(args.queries)
    results = linker.link_many(queries, threshold, cfg.workers, explain=args.explain)
    out = []
    for q, r in zip(queries, results):
        if args.explain:
            chosen, lines = r
            out.append(format_annotation(q, chosen))
            out.extend(lines)
        else:
            out.append(format_annotation(q, r))
    _write(args.output, "".join(line + "\n" for line in out))


def cmd_eval(cfg, args):
    gold = read_dataset(args.gold)
    hyp = read_dataset(args.annotations)
    report = average_f1(gold, [h.gold for h in hyp])
    if args.report:
        _write(args.report, report.to_tsv([g.query for g in gold]))
    print(report.summary())
    return report


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg, explicit = resolve_config(args)
        if args.command == "link":
            cmd_link(cfg, args, explicit)
        else:
            {"build": cmd_build, "train": cmd_train, "tune": cmd_tune,
             "eval": cmd_eval}[args.command](cfg, args)
    except UsageError as exc:
        print(f"qel: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CorpusFormatError, OSError, ValueError, KeyError) as exc:
        print(f"qel: {exc}", file=sys.stderr)
        return EXIT_DATA
    except AssertionError as exc:
        print(f"qel: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return 0


if __name__ == "__main__":
    sys.exit(main())
