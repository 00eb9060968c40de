"""Command-line pipeline: ingest, variants, scan, analyze, serve, export.

Each batch subcommand reads and writes the plain-text formats defined by
the owning modules, so runs can be chained, sharded, and restarted.
Outputs are deterministic for identical inputs. Exit codes: 0 success,
1 runtime/input failure (the message names the offending path), 2 usage
or configuration errors.
"""

from __future__ import annotations

import logging
import os
import sys
from pathlib import Path

import click

from . import __version__
from .errors import ConfigurationError, SemLabelError
from .formats import open_text_out, read_corpus
from .ontology_store import ingest_ontology, load_snapshot, save_snapshot
from .variant_generator import (
    DEFAULT_BUDGET,
    default_ruleset,
    generate_variants,
    load_rule_file,
    read_variants,
    write_variants,
)

log = logging.getLogger("semlabel")


def _fail(exc: BaseException) -> "click.ClickException":
    if isinstance(exc, OSError) and getattr(exc, "filename", None):
        message = f"{exc.filename}: {exc.strerror}"
    else:
        message = str(exc)
    err = click.ClickException(message)
    err.exit_code = 2 if isinstance(exc, ConfigurationError) else 1
    return err


@click.group()
@click.version_option(version=__version__, prog_name="semlabel")
@click.option("-v", "--verbose", count=True, help="Increase log verbosity.")
def main(verbose: int) -> None:
    """Precise semantic labeling of biomedical text."""
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


@main.command()
@click.argument("inputs", nargs=-1, required=True, type=click.Path())
@click.option(
    "--format",
    "format_",
    type=click.Choice(["normalized"]),
    default="normalized",
    show_default=True,
    help="Input format; only the normalized tabular format is supported.",
)
@click.option("--out", required=True, type=click.Path(), help="Snapshot file to write.")
def ingest(inputs: tuple[str, ...], format_: str, out: str) -> None:
    """Read ontology term lists into one snapshot file."""
    try:
        snapshot = ingest_ontology(inputs)
        save_snapshot(snapshot, out)
    except (SemLabelError, OSError) as exc:
        raise _fail(exc) from exc
    click.echo(f"{len(snapshot)} concepts from {len(inputs)} file(s) -> {out}")


@main.command()
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path())
@click.option("--out", required=True, type=click.Path(), help="Variant dump to write.")
@click.option(
    "--budget",
    type=int,
    default=DEFAULT_BUDGET,
    show_default=True,
    help="Per-concept variant cap.",
)
@click.option(
    "--rules",
    "rules_path",
    type=click.Path(),
    default=None,
    help="Extra rewrite-pair rules to load on top of the builtin set.",
)
def variants(snapshot_path: str, out: str, budget: int, rules_path: str | None) -> None:
    """Expand every concept's names into spelling variants."""
    try:
        snapshot = load_snapshot(snapshot_path)
        ruleset = default_ruleset()
        if rules_path is not None:
            load_rule_file(ruleset, rules_path)

        def stream():
            for concept in snapshot:
                yield from generate_variants(concept, budget, ruleset=ruleset)

        with open_text_out(out) as fh:
            n = write_variants(fh, stream())
    except (SemLabelError, OSError) as exc:
        raise _fail(exc) from exc
    click.echo(f"{n} variants for {len(snapshot)} concepts -> {out}")


@main.command()
@click.option("--variants", "variants_path", required=True, type=click.Path())
@click.option("--corpus", "corpus_path", required=True, type=click.Path())
@click.option("--occurrences", "occ_path", required=True, type=click.Path())
@click.option("--stats", "stats_path", required=True, type=click.Path())
@click.option(
    "--workers",
    type=int,
    default=None,
    help="Parallel scan processes [default: available cores].",
)
def scan(
    variants_path: str,
    corpus_path: str,
    occ_path: str,
    stats_path: str,
    workers: int | None,
) -> None:
    """Scan a corpus for all indexed variants."""
    from .corpus_matcher import build_index, scan_corpus, write_found_stats, write_occurrences

    if workers is None:
        workers = os.cpu_count() or 1
    try:
        index = build_index(read_variants(variants_path))
        with open_text_out(occ_path) as occ_fh:

            def emit(doc_id: str, occs) -> None:
                write_occurrences(occ_fh, occs)

            stats = scan_corpus(
                index, read_corpus(corpus_path), workers=workers, on_result=emit
            )
        with open_text_out(stats_path) as stats_fh:
            write_found_stats(stats_fh, stats)
    except (SemLabelError, OSError) as exc:
        raise _fail(exc) from exc
    click.echo(
        f"scanned {stats.docs_scanned} documents"
        + (f" ({stats.duplicate_docs} duplicates skipped)" if stats.duplicate_docs else "")
        + f"; {index.n_keys} keys -> {occ_path}, {stats_path}"
    )


@main.command()
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path())
@click.option("--variants", "variants_path", required=True, type=click.Path())
@click.option("--found", "found_path", required=True, type=click.Path())
@click.option("--out", "out_dir", required=True, type=click.Path(), help="Report directory.")
def analyze(snapshot_path: str, variants_path: str, found_path: str, out_dir: str) -> None:
    """Compute variability/ambiguity reports from a completed scan."""
    from .corpus_matcher import read_found_stats
    from .uncertainty_analyzer import ambiguity_report, variability_report, write_all

    try:
        snapshot = load_snapshot(snapshot_path)
        stats = read_found_stats(found_path)
        ambiguity = ambiguity_report(snapshot, read_variants(variants_path))
        variability = variability_report(snapshot, read_variants(variants_path), stats)
        written = write_all(out_dir, variability, ambiguity)
    except (SemLabelError, OSError) as exc:
        raise _fail(exc) from exc
    click.echo("\n".join(str(p) for p in written))


@main.command()
@click.option("--variants", "variants_path", required=True, type=click.Path())
@click.option("--data", "data_dir", required=True, type=click.Path(), help="State directory.")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8040, show_default=True)
def serve(variants_path: str, data_dir: str, host: str, port: int) -> None:
    """Run the annotation service over HTTP."""
    import uvicorn

    from .annotation_service import AnnotationStore, create_app
    from .corpus_matcher import build_index

    try:
        index = build_index(read_variants(variants_path))
        store = AnnotationStore(index, data_dir)
    except (SemLabelError, OSError) as exc:
        raise _fail(exc) from exc
    app = create_app(store)
    click.echo(f"serving on http://{host}:{port} (data: {data_dir})")
    uvicorn.run(app, host=host, port=port, log_level="warning")


@main.command()
@click.option("--data", "data_dir", required=True, type=click.Path(), help="State directory.")
@click.option("--doc", "doc_id", required=True, help="Document id to export.")
@click.option("--out", type=click.Path(), default=None, help="Output file [default: stdout].")
def export(data_dir: str, doc_id: str, out: str | None) -> None:
    """Export one validated document as XML, offline from the state directory."""
    from .annotation_service import AnnotationStore
    from .errors import NotFoundError

    try:
        if not Path(data_dir, "documents.tsv").exists():
            raise NotFoundError(f"{data_dir}: not a service state directory")
        with AnnotationStore(None, data_dir) as store:
            xml = store.export_xml(doc_id)
        if out is None:
            click.echo(xml, nl=False)
        else:
            with open_text_out(out) as fh:
                fh.write(xml)
    except (SemLabelError, OSError) as exc:
        raise _fail(exc) from exc


if __name__ == "__main__":
    main()
