"""Command-line interface: ingest, serve, query, qa, eval, export, import."""

from __future__ import annotations

import json
from pathlib import Path

import click

from .ingest import ingest_all
from .qa import QaEngine, load_patterns
from .quality import Choice, LabelRecord, aggregate_labels, coverage_eval, wilson
from .query import execute, parse_query
from .resources import fixture_dir, load_word_list, read_data_text
from .service import ServiceConfig, create_app
from .store import TripleStore, parse_triple_line


def _data_dir_option(f):
    return click.option(
        "--data",
        "data_dir",
        type=click.Path(exists=True, file_okay=False, path_type=Path),
        default=None,
        envvar="ASDKB_DATA_DIR",
        help="Record-file directory (defaults to the bundled fixture dataset).",
    )(f)


def _resolve_data_dir(data_dir):
    return Path(data_dir) if data_dir else fixture_dir()


def _load_kb(data_dir):
    result = ingest_all(_resolve_data_dir(data_dir))
    if result.report.violations:
        for v in result.report.violations:
            click.echo(f"violation: {v}", err=True)
        raise SystemExit(2)
    return result


def _build_engine(result):
    return QaEngine(
        result.store,
        result.schema,
        load_patterns(read_data_text("patterns.jsonl")),
        sorted(load_word_list("intent_lexicon.txt")),
    )


@click.group()
def main():
    """AsdKB knowledge-base engine and screening service."""


@main.command()
@_data_dir_option
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write the canonical triple dump to this file.")
def ingest(data_dir, out):
    """Ingest record files and report per-kind counts."""
    result = _load_kb(data_dir)
    report = result.report
    for kind, count in sorted(report.counts.items()):
        click.echo(f"{kind}: {count}")
    for group in report.merges:
        click.echo(f"merged: {' + '.join(group)}")
    for name, count in sorted(report.link_counts.items()):
        click.echo(f"links {name}: {count}")
    click.echo(f"triples: {len(result.store)}")
    if out:
        out.write_text(result.store.export_canonical(), encoding="utf-8")
        click.echo(f"dump written to {out}")


@main.command()
@_data_dir_option
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), required=True)
def export(data_dir, out):
    """Export the ingested KB as a canonical triple dump."""
    result = _load_kb(data_dir)
    out.write_text(result.store.export_canonical(), encoding="utf-8")
    click.echo(f"{len(result.store)} triples written to {out}")


@main.command(name="import")
@click.argument("dump", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Re-export the parsed dump canonically to this file.")
def import_(dump, out):
    """Import a triple dump and print its statistics."""
    store = TripleStore.from_ntriples(dump.read_text(encoding="utf-8"))
    click.echo(f"{len(store)} triples, {len(store.subjects())} subjects")
    if out:
        out.write_text(store.export_canonical(), encoding="utf-8")
        click.echo(f"canonical dump written to {out}")


@main.command()
@click.argument("query_text")
@_data_dir_option
@click.option("--dump", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              default=None, help="Query a dump file instead of ingesting records.")
def query(query_text, data_dir, dump):
    """Run a graph-pattern query and print a tab-separated table."""
    if dump:
        store = TripleStore.from_ntriples(dump.read_text(encoding="utf-8"))
    else:
        store = _load_kb(data_dir).store
    table = execute(parse_query(query_text), store)
    click.echo(table.to_tsv())


@main.command()
@click.argument("question")
@_data_dir_option
def qa(question, data_dir):
    """Answer a natural-language question."""
    result = _load_kb(data_dir)
    engine = _build_engine(result)
    answer = engine.answer_question(question)
    click.echo(
        json.dumps(
            {
                "answered": answer.answered,
                "route": answer.route.value,
                "answer_text": answer.answer_text,
                "entities": answer.entities,
                "screening_redirect": answer.screening_redirect,
                "pattern_id": answer.pattern_id,
            },
            ensure_ascii=False,
            indent=2,
        )
    )


@main.command()
@_data_dir_option
@click.option("--port", type=int, default=None, envvar="ASDKB_PORT")
@click.option("--host", default="127.0.0.1")
@click.option("--state-dir", type=click.Path(file_okay=False, path_type=Path),
              default=Path("asdkb_state"), show_default=True,
              help="Directory for the append-only session/vote logs.")
def serve(data_dir, port, host, state_dir):
    """Start the HTTP service."""
    import uvicorn

    config = ServiceConfig.from_env(
        data_dir=data_dir, port=port, state_dir=state_dir
    )
    if host:
        config.host = host
    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")


@main.group(name="eval")
def eval_group():
    """Quality-evaluation commands."""


@eval_group.command()
@click.option("--labels", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              required=True, help="JSON-lines label records.")
@click.option("--alpha", type=float, default=0.05, show_default=True)
def accuracy(labels, alpha):
    """Estimate KB accuracy from annotator labels via the Wilson interval."""
    records = []
    with labels.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            payload = json.loads(line)
            records.append(
                LabelRecord(
                    annotator=str(payload["annotator"]),
                    entity=str(payload.get("entity", "")),
                    triple=parse_triple_line(payload["triple"], lineno),
                    choice=Choice(payload["choice"]),
                )
            )
    successes, trials = aggregate_labels(records)
    interval = wilson(successes, trials, alpha)
    click.echo(
        f"accuracy {interval.center * 100:.2f}% ± {interval.half_width * 100:.2f}% "
        f"(successes {successes:g} / trials {trials}, alpha {alpha})"
    )
    click.echo(
        json.dumps(
            {
                "successes": successes,
                "trials": trials,
                "alpha": alpha,
                "center": interval.center,
                "half_width": interval.half_width,
                "lower": interval.lower,
                "upper": interval.upper,
            }
        )
    )


@eval_group.command()
@click.option("--questions", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              required=True, help="JSON-lines with a 'question' field, or raw lines.")
@_data_dir_option
def coverage(questions, data_dir):
    """Fraction of questions the QA module can answer."""
    texts = []
    for line in questions.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("{"):
            texts.append(json.loads(line)["question"])
        else:
            texts.append(line)
    result = _load_kb(data_dir)
    engine = _build_engine(result)
    fraction = coverage_eval(texts, engine)
    click.echo(f"coverage {fraction * 100:.1f}% ({round(fraction * len(texts))}/{len(texts)})")
    click.echo(json.dumps({"coverage": fraction, "questions": len(texts)}))


if __name__ == "__main__":
    main()
