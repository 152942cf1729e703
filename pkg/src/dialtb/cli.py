"""Command-line entry point.

Subcommands: validate, agree, stats {rel,query,vocab,ratio},
lab {assemble,train,parse,eval,confusion}, and demo.  Data goes to standard
output or to --out; diagnostics go to standard error.  Exit codes: 0 on
success, 1 when validation found errors, 2 on usage or input problems.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, analytics, lab, validation
from .agreement import agreement_report
from .conllu import token_count, write_conllu
from .demo import write_demo_tree
from .errors import DialtbError
from .manifest import ManifestEntry, load_corpus, write_manifest
from .reporting import ReportWriter, fmt_pct, load_config


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="dialtb", description=__doc__)
    top.add_argument("--version", action="version", version=f"dialtb {__version__}")
    top.add_argument("--config", help="key=value defaults file; flags win")
    top.add_argument("--seed", type=int, default=None, help="random seed (default 42)")
    top.add_argument("--format", choices=("tsv", "jsonl"), default=None)
    top.add_argument("--out", help="write the report here instead of stdout")
    top.add_argument("--no-timestamp", action="store_true",
                     help="omit the generated-at header line")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a treebank manifest")
    p.add_argument("manifest")
    p.add_argument("--strict-groups", action="store_true",
                   help="treat bound-group surface mismatches as errors")
    p.add_argument("--inventory", help="label inventory file (default: packaged)")

    p = sub.add_parser("agree", help="inter-annotator agreement for two manifests")
    p.add_argument("manifest_a")
    p.add_argument("manifest_b")
    p.add_argument("--task", choices=("labels", "heads", "both"), default="both")

    stats = sub.add_parser("stats", help="corpus comparison statistics")
    ssub = stats.add_subparsers(dest="stats_command", required=True)
    p = ssub.add_parser("rel", help="relation frequencies and ratios")
    p.add_argument("manifest_a")
    p.add_argument("manifest_b")
    p = ssub.add_parser("query", help="count matching word rows")
    p.add_argument("manifest")
    p.add_argument("--query", help="query file")
    p.add_argument("--match", choices=analytics.QUERY_FIELDS)
    p.add_argument("--value")
    p.add_argument("--parallel-with", dest="parallel_with",
                   help="restrict to documents parallel with this manifest")
    p = ssub.add_parser("vocab", help="vocabulary overlap")
    p.add_argument("manifest_a")
    p.add_argument("manifest_b")
    p.add_argument("--unit", choices=("form", "lemma"), default="form")
    p = ssub.add_parser("ratio", help="marker rate ratio over shared documents")
    p.add_argument("manifest_a")
    p.add_argument("manifest_b")
    p.add_argument("--query", required=True, help="query file for corpus A")
    p.add_argument("--query-b", dest="query_b", help="query file for corpus B")
    p.add_argument("--keys", required=True, help="comma-separated parallel keys")

    labp = sub.add_parser("lab", help="parsing experiments")
    lsub = labp.add_subparsers(dest="lab_command", required=True)
    p = lsub.add_parser("assemble", help="describe a training scenario")
    p.add_argument("manifest_a")
    p.add_argument("manifest_b")
    p.add_argument("--scenario", choices=lab.SCENARIO_NAMES, required=True)
    p = lsub.add_parser("train", help="train the baseline parser")
    p.add_argument("manifest_a")
    p.add_argument("manifest_b")
    p.add_argument("--scenario", choices=lab.SCENARIO_NAMES, required=True)
    p.add_argument("--epochs", type=int, default=8)
    p.add_argument("--model", required=True, help="output model file")
    p = lsub.add_parser("parse", help="parse a manifest with a trained model")
    p.add_argument("manifest")
    p.add_argument("--model", required=True)
    p.add_argument("--out-dir", required=True)
    p = lsub.add_parser("eval", help="attachment scores, gold vs predicted")
    p.add_argument("gold_manifest")
    p.add_argument("pred_manifest")
    p.add_argument("--per-label", action="store_true")
    p = lsub.add_parser("confusion", help="collapsed-label confusion matrix")
    p.add_argument("gold_manifest")
    p.add_argument("pred_manifest")
    p.add_argument("--min-gold", type=int, default=10)

    p = sub.add_parser("demo", help="write the bundled synthetic dialect corpora")
    p.add_argument("--out-dir", required=True)
    return top


def _writer(args, manifests=()):
    return ReportWriter(fmt=args.format, out=args.out, seed=args.seed,
                        manifests=manifests, timestamp=not args.no_timestamp)


def _cmd_validate(args) -> int:
    corpus = load_corpus(args.manifest)
    inventory = validation.load_inventory(args.inventory)
    report = validation.validate_corpus(corpus, inventory, strict_groups=args.strict_groups)
    writer = _writer(args, [args.manifest])
    writer.emit(["severity", "code", "doc_id", "sent_id", "word_id", "message"],
                report.to_rows())
    print(f"{report.error_count} errors, {report.warning_count} warnings, "
          f"{len(report.issues)} issues total", file=sys.stderr)
    return 1 if report.error_count else 0


def _cmd_agree(args) -> int:
    corpus_a = load_corpus(args.manifest_a)
    corpus_b = load_corpus(args.manifest_b)
    docs_b = {d.doc_id: d for d in corpus_b.documents}
    missing = [d.doc_id for d in corpus_a.documents if d.doc_id not in docs_b]
    extra = [i for i in docs_b if i not in {d.doc_id for d in corpus_a.documents}]
    if missing or extra:
        raise DialtbError(f"manifests disagree on documents: missing {missing}, extra {extra}")
    pairs = [(d.doc_id, d, docs_b[d.doc_id]) for d in corpus_a.documents]
    report = agreement_report(pairs)

    columns = ["text", "tokens"]
    if args.task in ("labels", "both"):
        columns += ["labels_kappa", "labels_f1"]
    if args.task in ("heads", "both"):
        columns += ["heads_kappa", "heads_f1"]

    def row(name, tokens, st):
        out = [name, tokens]
        if args.task in ("labels", "both"):
            out += [fmt_pct(st.label_kappa), fmt_pct(st.label_f1)]
        if args.task in ("heads", "both"):
            out += [fmt_pct(st.head_kappa), fmt_pct(st.head_f1)]
        return out

    rows = [row(t.text_id, t.token_count, t.stats) for t in report.per_text]
    total = sum(t.token_count for t in report.per_text)
    rows.append(row("macro_avg", total, report.macro_avg))
    rows.append(row("micro_avg", total, report.micro_avg))
    _writer(args, [args.manifest_a, args.manifest_b]).emit(columns, rows)
    return 0


def _cmd_stats(args) -> int:
    if args.stats_command == "rel":
        a = load_corpus(args.manifest_a)
        b = load_corpus(args.manifest_b)
        rows = []
        for r in analytics.relation_frequencies(a, b):
            rows.append([r.key, r.count_a, analytics.fmt_per1k3(r.count_a, r.total_a),
                         r.count_b, analytics.fmt_per1k3(r.count_b, r.total_b),
                         analytics.fmt_ratio3(r.count_a, r.total_a, r.count_b, r.total_b)])
        _writer(args, [args.manifest_a, args.manifest_b]).emit(
            ["deprel", "count_a", "per1k_a", "count_b", "per1k_b", "ratio"], rows)
        return 0
    if args.stats_command == "query":
        corpus = load_corpus(args.manifest)
        if args.query:
            query = analytics.load_query(args.query)
        elif args.match and args.value is not None:
            query = analytics.QuerySpec(match_on=args.match, value=args.value)
        else:
            raise DialtbError("give either --query FILE or --match/--value")
        manifests = [args.manifest]
        other = None
        if args.parallel_with:
            other = load_corpus(args.parallel_with)
            query = analytics.QuerySpec(query.match_on, query.value, "parallel")
            manifests.append(args.parallel_with)
        result = analytics.count_query(corpus, query, other)
        _writer(args, manifests).emit(
            ["match_on", "value", "matches", "total_words", "per1k"],
            [[query.match_on, query.value, result.matches, result.total,
              result.per1k_2dec]])
        return 0
    if args.stats_command == "vocab":
        a = load_corpus(args.manifest_a)
        b = load_corpus(args.manifest_b)
        v = analytics.vocabulary_overlap(a, b, unit=args.unit)
        _writer(args, [args.manifest_a, args.manifest_b]).emit(
            ["unit", "unique_a", "unique_b", "shared"],
            [[args.unit, v.unique_a, v.unique_b, v.shared]])
        return 0
    # ratio
    a = load_corpus(args.manifest_a)
    b = load_corpus(args.manifest_b)
    query = analytics.load_query(args.query)
    query_b = analytics.load_query(args.query_b) if args.query_b else None
    keys = {k for k in args.keys.split(",") if k}
    ratio = analytics.marker_ratio(a, b, query, keys, query_b)
    _writer(args, [args.manifest_a, args.manifest_b]).emit(
        ["value", "keys", "ratio_a_to_b"],
        [[query.value, ",".join(sorted(keys)),
          "undefined" if ratio is None else f"{ratio:.4f}"]])
    return 0


def _seed(args) -> int:
    return 42 if args.seed is None else args.seed


def _cmd_lab(args) -> int:
    if args.lab_command == "assemble":
        a = load_corpus(args.manifest_a)
        b = load_corpus(args.manifest_b)
        scn = lab.assemble(args.scenario, a, b, seed=_seed(args))
        payload = {"name": scn.name, "seed": scn.seed,
                   "train_tokens": scn.train_tokens,
                   "dev_docs": [d.doc_id for d in scn.dev_docs],
                   "test_corpus": scn.test_corpus.name, **scn.info}
        text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return 0
    if args.lab_command == "train":
        a = load_corpus(args.manifest_a)
        b = load_corpus(args.manifest_b)
        scn = lab.assemble(args.scenario, a, b, seed=_seed(args))
        model = lab.train(scn, epochs=args.epochs, seed=_seed(args))
        model.save(args.model)
        print(f"trained {args.scenario} on {scn.train_tokens} tokens -> {args.model}",
              file=sys.stderr)
        return 0
    if args.lab_command == "parse":
        model = lab.ParserModel.load(args.model)
        corpus = load_corpus(args.manifest)
        parsed = lab.parse_corpus(model, corpus)
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        entries = []
        for doc in parsed.documents:
            rel = f"{doc.doc_id}.conllu"
            (out_dir / rel).write_bytes(write_conllu(doc))
            entries.append(ManifestEntry(doc.doc_id, rel, doc.partition, doc.parallel_key))
        write_manifest(entries, out_dir / "parsed.manifest")
        print(f"parsed {token_count(parsed)} tokens -> {out_dir}", file=sys.stderr)
        return 0
    if args.lab_command == "eval":
        gold = load_corpus(args.gold_manifest)
        pred = load_corpus(args.pred_manifest)
        report = lab.score(gold, pred)
        rows = [["all", report.token_count, f"{report.las:.3f}", f"{report.uas:.3f}"]]
        if args.per_label:
            for label, (g, h, hl) in report.per_label.items():
                rows.append([label, g,
                             f"{hl / g * 100.0:.3f}" if g else "",
                             f"{h / g * 100.0:.3f}" if g else ""])
        _writer(args, [args.gold_manifest, args.pred_manifest]).emit(
            ["scope", "tokens", "las", "uas"], rows)
        return 0
    # confusion
    gold = load_corpus(args.gold_manifest)
    pred = load_corpus(args.pred_manifest)
    matrix = lab.confusion(gold, pred, min_gold=args.min_gold)
    columns = ["gold\\pred"] + list(matrix.labels)
    rows = matrix.matrix_rows()
    if matrix.omitted:
        rows.append([f"(omitted: {', '.join(f'{k}={v}' for k, v in matrix.omitted.items())})"]
                    + [""] * len(matrix.labels))
    _writer(args, [args.gold_manifest, args.pred_manifest]).emit(columns, rows)
    return 0


def _cmd_demo(args) -> int:
    paths = write_demo_tree(args.out_dir, seed=_seed(args))
    for key, value in paths.items():
        print(f"{key}\t{value}", file=sys.stderr)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            defaults = load_config(args.config)
        except OSError as exc:
            print(f"dialtb: cannot read config: {exc}", file=sys.stderr)
            return 2
        if args.seed is None and "seed" in defaults:
            args.seed = int(defaults["seed"])
        if args.format is None and "format" in defaults:
            args.format = defaults["format"]
    if args.format is None:
        args.format = "tsv"
    try:
        if args.command == "validate":
            return _cmd_validate(args)
        if args.command == "agree":
            return _cmd_agree(args)
        if args.command == "stats":
            return _cmd_stats(args)
        if args.command == "lab":
            return _cmd_lab(args)
        if args.command == "demo":
            return _cmd_demo(args)
        raise DialtbError(f"unknown command {args.command!r}")
    except (DialtbError, OSError) as exc:
        print(f"dialtb: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
