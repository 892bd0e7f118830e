"""Command-line entry points.

Exit codes: 0 success, 1 pipeline failure, 2 usage/config error. JSON
results go to stdout (and to --out when given); human-readable summaries
go to stderr so stdout stays machine-parseable.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from .benchmark import load_dataset, run_benchmark
from .config import PipelineConfig, expand_fixtures_dir, load_config
from .errors import ConfigError, FizzError
from .factquality import analyze_fact_pairs, load_fact_pairs
from .pipeline import FizzPipeline
from .scoring import FizzReport


def _dump_json(data: dict) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def backend_options(fn):
    @click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False),
                  default=None, help="INI config file.")
    @click.option("--nli-url", default=None, help="NLI scoring endpoint.")
    @click.option("--llm-url", default=None, help="Decomposition LLM endpoint.")
    @click.option("--coref-url", default=None, help="Coreference cluster endpoint.")
    @click.option("--fixtures", type=click.Path(exists=True, file_okay=False),
                  default=None, help="Directory of scripted backend fixtures.")
    @click.option("--gran", type=int, default=None, help="Max expansion window size.")
    @click.option("--seed", type=int, default=None, help="Seed for resampling.")
    @click.option("--cache", "cache_path", type=click.Path(dir_okay=False),
                  default=None, help="On-disk NLI cache file.")
    @click.option("--out", "out_dir", type=click.Path(file_okay=False),
                  default=None, help="Directory for result files.")
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        return fn(*args, **kwargs)

    return wrapper


def _build_config(config_file, fixtures, **flag_overrides) -> PipelineConfig:
    overrides = {k: v for k, v in flag_overrides.items() if v is not None}
    if fixtures:
        overrides.update(expand_fixtures_dir(fixtures))
    config = load_config(config_file=config_file, overrides=overrides)
    return config.validate()


def _fail(exc: Exception, code: int) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(code)


@click.group()
def main() -> None:
    """Factual-inconsistency scoring for abstractive summaries."""


@main.command()
@click.argument("document", type=click.Path(exists=True, dir_okay=False))
@click.argument("summary", type=click.Path(exists=True, dir_okay=False))
@backend_options
def score(document, summary, config_file, nli_url, llm_url, coref_url, fixtures,
          gran, seed, cache_path, out_dir) -> None:
    """Score one SUMMARY against its DOCUMENT."""
    try:
        config = _build_config(
            config_file, fixtures,
            nli_url=nli_url, llm_url=llm_url, coref_url=coref_url,
            gran=gran, seed=seed, cache_path=cache_path, report_dir=out_dir,
        )
    except ConfigError as exc:
        _fail(exc, 2)
    document_text = Path(document).read_text(encoding="utf-8").strip()
    summary_text = Path(summary).read_text(encoding="utf-8").strip()
    try:
        pipeline = FizzPipeline(config)
        report = pipeline.run(document_text, summary_text, pair_id=Path(document).stem)
    except ConfigError as exc:
        _fail(exc, 2)
    except FizzError as exc:
        _fail(exc, 1)
    _echo_report_table(report, pipeline)
    payload = _dump_json(report.to_json_dict())
    if config.report_dir:
        out = Path(config.report_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(payload, encoding="utf-8")
    click.echo(payload, nl=False)


def _echo_report_table(report: FizzReport, pipeline: FizzPipeline) -> None:
    click.echo(f"pair: {report.pair_id}", err=True)
    click.echo(f"{'score':>8}  {'window':<12} fact", err=True)
    for fact, fs in zip(report.atomic_facts, report.facts):
        window = ",".join(str(i) for i in fs.best_window)
        click.echo(f"{fs.final_score:>8.4f}  [{window:<10}] {fact.text}", err=True)
    for dropped in report.dropped_facts:
        click.echo(
            f"{'dropped':>8}  [{dropped.top_class}={dropped.top_class_score:.2f}] "
            f"{dropped.fact.text}",
            err=True,
        )
    stats = pipeline.nli_stats()
    click.echo(
        f"fizz score: {report.fizz_score}  "
        f"(nli calls: {stats['calls']}, cache hit ratio: {stats['hit_ratio']:.2f})",
        err=True,
    )


@main.command()
@click.argument("dataset", type=click.Path(exists=True, dir_okay=False))
@click.option("--single-threshold", is_flag=True, default=False,
              help="Share one validation threshold across subsets.")
@click.option("--iters", type=int, default=10000, show_default=True,
              help="Bootstrap resamples for confidence intervals.")
@backend_options
def benchmark(dataset, single_threshold, iters, config_file, nli_url, llm_url,
              coref_url, fixtures, gran, seed, cache_path, out_dir) -> None:
    """Evaluate the pipeline over a labeled JSONL DATASET."""
    try:
        config = _build_config(
            config_file, fixtures,
            nli_url=nli_url, llm_url=llm_url, coref_url=coref_url,
            gran=gran, seed=seed, cache_path=cache_path, report_dir=out_dir,
        )
    except ConfigError as exc:
        _fail(exc, 2)
    try:
        pairs = load_dataset(dataset)
        pipeline = FizzPipeline(config)
        result = run_benchmark(
            pairs,
            pipeline,
            single_threshold=single_threshold,
            iters=iters,
            seed=config.seed,
            workers=config.pair_workers,
        )
    except ConfigError as exc:
        _fail(exc, 2)
    except FizzError as exc:
        _fail(exc, 1)
    payload = _dump_json(result.to_json_dict())
    if config.report_dir:
        out = Path(config.report_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "results.json").write_text(payload, encoding="utf-8")
        (out / "scores.csv").write_text(result.to_csv(), encoding="utf-8")
        report_dir = out / "reports"
        report_dir.mkdir(exist_ok=True)
        for pair_id, report in result.reports.items():
            (report_dir / f"{pair_id}.json").write_text(
                _dump_json(report.to_json_dict()), encoding="utf-8"
            )
    for name, subset in result.subsets.items():
        click.echo(
            f"{name}: balanced accuracy {subset.balanced_accuracy:.4f} "
            f"[{subset.ci_low:.4f}, {subset.ci_high:.4f}] "
            f"at threshold {subset.threshold:.4f}",
            err=True,
        )
    if result.unscoreable:
        click.echo(f"warning: {len(result.unscoreable)} unscoreable pair(s)", err=True)
    click.echo(payload, nl=False)


@main.command("analyze-facts")
@click.argument("pairs_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None)
def analyze_facts(pairs_path, out_dir) -> None:
    """Fact-quality metrics comparing generated and human fact sets."""
    try:
        pairs = load_fact_pairs(pairs_path)
        metrics = analyze_fact_pairs(pairs)
    except FizzError as exc:
        _fail(exc, 1)
    payload = _dump_json(metrics)
    if out_dir:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "fact_metrics.json").write_text(payload, encoding="utf-8")
    click.echo(payload, nl=False)


if __name__ == "__main__":
    main()
