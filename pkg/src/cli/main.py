"""
Command line entry point for the link prediction benchmark.

    python src/cli/main.py <command> [flags]

Commands: generate, task, features, train, predict, eval, analyze,
benchmark, pipeline. Every command accepts --threads, --config and
--log-level, and writes manifest.json into its output directory.

Exit codes:
    0  success
    1  unexpected error
    2  usage error (unknown flag, bad flag value)
    3  missing input file
    4  parse error or schema mismatch
    5  invalid configuration
    6  data precondition failed (too few pairs, positives or tail samples)
    7  training diverged
Errors are reported as one JSON line on stderr.
"""

import argparse
import json
import logging
import os
import sys
from datetime import date

if __package__ in (None, ""):
    sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pandas as pd

from cli.manifest import ManifestRecorder
from common.errors import (
    ConfigError,
    InsufficientDataError,
    InsufficientPairsError,
    LinkBenchError,
    SchemaMismatchError,
    UsageError,
)
from common.settings import (
    build_config,
    default_log_level,
    default_threads,
    load_environment,
    read_config_file,
)
from data_pipeline.edge_io import read_edge_file, write_edge_file
from data_pipeline.synthetic import SyntheticConfig, generate_synthetic
from evaluation.analysis import analysis_report, write_report
from evaluation.roc import auc, write_roc_csv
from feature_store.definitions import FeatureConfig, feature_set_definition
from feature_store.extractors import build_feature_matrix
from feature_store.matrix_io import read_feature_csv, read_feature_header, write_feature_csv
from model_registry.model_store import save_model
from model_registry.tracking import log_training_run
from model_training.train_model import MlpTrainer, TrainConfig
from scoring.prediction_service import predict_task
from scoring.scorers import parse_scorer, read_scores_csv, write_scores_csv
from task_builder.task import (
    TaskSpec,
    balanced_training_set,
    read_task_file,
    sample_pairs,
    write_task_file,
)
from temporal_graph.graph import EPOCH

# Set up logging
logger = logging.getLogger(__name__)

EXIT_CODES_HELP = __doc__[__doc__.index("Exit codes:"):]
UNBOUNDED = ("inf", "none", "unbounded")
GRID_COLUMNS = ("horizon", "degree_cutoff", "min_multiplicity", "scorer", "pairs", "positives", "auc")


# ---------------------------------------------------------------- flag types

def parse_day(text):
    """Integer day, or a YYYY-MM-DD date converted to days since 1990-01-01."""
    text = str(text).strip()
    if "-" in text[1:]:
        try:
            return (date.fromisoformat(text) - EPOCH).days
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid date '{text}'")
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid day '{text}'")


def parse_cutoff(text):
    text = str(text).strip().lower()
    if text in UNBOUNDED:
        return None
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("degree cutoff must be >= 0")
    return value


def parse_samples(text):
    text = str(text).strip().lower()
    return "all" if text == "all" else int(text)


def int_list(text):
    return [int(x) for x in str(text).split(",") if x.strip()]


def cutoff_list(text):
    return [parse_cutoff(x) for x in str(text).split(",") if x.strip()]


def day_list(text):
    return [parse_day(x) for x in str(text).split(",") if x.strip()]


def name_list(text):
    return [x.strip() for x in str(text).split(",") if x.strip()]


def out_dir_of(path):
    return os.path.dirname(os.path.abspath(path))


def prepare_output(path):
    """Create the parent directory of an output file and return the path."""
    os.makedirs(out_dir_of(path), exist_ok=True)
    return path


# ---------------------------------------------------------------- commands

def cmd_generate(args, recorder):
    cfg = build_config(
        SyntheticConfig,
        num_nodes=args.nodes, edges_per_new_node=args.m, intra_step_edges=args.intra,
        repeat_edges=args.repeat, days_per_step=args.days_per_step, seed=args.seed,
    )
    g = generate_synthetic(cfg)
    write_edge_file(g, prepare_output(args.out))
    recorder.add_output(args.out)
    return out_dir_of(args.out)


def _task_spec(args, samples):
    return build_config(
        TaskSpec,
        t0_day=args.t0, t1_day=args.t1, degree_cutoff=args.cutoff_c,
        min_multiplicity=args.min_w, num_samples=samples, seed=args.seed,
    )


def cmd_task(args, recorder):
    recorder.add_input(args.graph)
    g = read_edge_file(args.graph)
    if args.balanced:
        if args.samples == "all":
            raise ConfigError("--balanced needs an explicit --samples size")
        task = balanced_training_set(g, _task_spec(args, "all"), int(args.samples), args.seed)
    else:
        task = sample_pairs(g, _task_spec(args, args.samples), threads=args.threads)
    write_task_file(task, prepare_output(args.out))
    recorder.add_output(args.out)
    return out_dir_of(args.out)


def feature_config_from_args(args):
    values = {
        "feature_set": args.set,
        "yeo_johnson": args.yeo_johnson,
        "impute": not args.no_impute,
        "impute_window": args.impute_window,
    }
    if args.snapshots is not None:
        values["snapshot_offsets"] = args.snapshots
    else:
        values["snapshot_offsets"] = feature_set_definition(args.set)["default_offsets"]
    if args.lambdas_from:
        header = read_feature_header(args.lambdas_from)
        values["yeo_johnson"] = True
        values["yeo_johnson_lambdas"] = header["config"]["yeo_johnson_lambdas"]
    return build_config(FeatureConfig, **values)


def cmd_features(args, recorder):
    for path in (args.graph, args.task, args.lambdas_from):
        recorder.add_input(path)
    g = read_edge_file(args.graph)
    task = read_task_file(args.task)
    config = feature_config_from_args(args)
    fm = build_feature_matrix(g, task.pairs, task.spec.t0_day, config, threads=args.threads)
    write_feature_csv(fm, prepare_output(args.out))
    recorder.add_output(args.out)
    return out_dir_of(args.out)


def _aligned_labels(fm, task):
    if not np.array_equal(fm.pairs, task.pairs):
        raise SchemaMismatchError("feature rows and label pairs differ; build features from the same task file")
    return task.labels.astype(np.float64)


def train_config_from_args(args, feature_set):
    definition = feature_set_definition(feature_set)
    hidden = args.arch if args.arch is not None else definition["default_hidden"]
    pca = args.pca if args.pca is not None else definition["default_pca"]
    if args.no_pca:
        pca = None
    return build_config(
        TrainConfig,
        hidden_layers=hidden, optimizer=args.optimizer, learning_rate=args.lr, epochs=args.epochs,
        batch_size=args.batch, seed=args.seed, pca_components=pca, validation_fraction=args.validation,
    )


def cmd_train(args, recorder):
    recorder.add_input(args.features)
    recorder.add_input(args.labels)
    fm = read_feature_csv(args.features)
    task = read_task_file(args.labels)
    labels = _aligned_labels(fm, task)
    header = read_feature_header(args.features)
    cfg = train_config_from_args(args, fm.config.feature_set)

    trainer = MlpTrainer(cfg)
    result = trainer.fit(fm.values, labels, feature_header=header)
    metrics = trainer.evaluate(fm.values, labels)
    trainer.model.meta = {"train_config": cfg.model_dump(), "train_metrics": metrics}
    save_model(trainer.model, prepare_output(args.model_out))

    loss_out = args.loss_out or os.path.splitext(args.model_out)[0] + ".loss.csv"
    history = pd.DataFrame({"epoch": np.arange(1, len(result.loss_history) + 1), "loss": result.loss_history})
    if result.validation_auc:
        history["validation_auc"] = result.validation_auc
    history.to_csv(prepare_output(loss_out), index=False, lineterminator="\n")
    recorder.add_output(args.model_out)
    recorder.add_output(loss_out)

    params = {"feature_set": fm.config.feature_set, **cfg.model_dump()}
    params["hidden_layers"] = ",".join(str(h) for h in cfg.hidden_layers)
    log_training_run(params, result.loss_history, metrics, model_path=args.model_out, uri=args.mlflow_uri)
    return out_dir_of(args.model_out)


def cmd_predict(args, recorder):
    recorder.add_input(args.graph)
    recorder.add_input(args.task)
    g = read_edge_file(args.graph)
    task = read_task_file(args.task)
    scorer = parse_scorer(args.scorer, seed=args.seed)
    if getattr(scorer, "path", None):
        recorder.add_input(scorer.path)
    scores = predict_task(scorer, g, task, threads=args.threads)
    write_scores_csv(task.pairs, scores, prepare_output(args.out))
    recorder.add_output(args.out)
    return out_dir_of(args.out)


def evaluate_scores(scores_path, task_path):
    pairs, scores = read_scores_csv(scores_path)
    task = read_task_file(task_path)
    if not np.array_equal(pairs, task.pairs):
        raise SchemaMismatchError("score rows do not match the task pairs")
    return auc(scores, task.labels)


def cmd_eval(args, recorder):
    recorder.add_input(args.scores)
    recorder.add_input(args.task)
    result = evaluate_scores(args.scores, args.task)
    print(repr(result.auc))
    logger.info(f"AUC {result.auc:.6f} over {result.positives} positives and {result.negatives} negatives")
    if args.roc_out:
        write_roc_csv(result, prepare_output(args.roc_out))
        recorder.add_output(args.roc_out)
        return out_dir_of(args.roc_out)
    return out_dir_of(args.scores)


def cmd_analyze(args, recorder):
    recorder.add_input(args.graph)
    recorder.add_input(args.vocab)
    g = read_edge_file(args.graph, vocab_path=args.vocab)
    cutoffs = args.cutoffs if args.cutoffs else [g.last_day() if g.num_edges else 0]
    reports = analysis_report(g, cutoffs, k_min=args.k_min)
    write_report(reports, args.out_dir)
    recorder.add_output(args.out_dir)
    return args.out_dir


def benchmark_grid(g, t1_day, horizons, cutoffs, multiplicities, samples, scorer_names, seed, threads=1):
    """
    AUC for every (horizon, degree cutoff, multiplicity, scorer), with
    t0 = t1 - horizon. The auc cell is empty where it is undefined.
    """
    scorers = [parse_scorer(name, seed=seed) for name in scorer_names]
    rows = []
    for horizon in horizons:
        for c in cutoffs:
            for w in multiplicities:
                spec = build_config(
                    TaskSpec, t0_day=t1_day - horizon, t1_day=t1_day, degree_cutoff=c,
                    min_multiplicity=w, num_samples=samples, seed=seed,
                )
                try:
                    task = sample_pairs(g, spec, threads=threads)
                except InsufficientPairsError as e:
                    logger.warning(f"horizon={horizon} c={c} w={w}: {e}")
                    task = None
                for name, scorer in zip(scorer_names, scorers):
                    row = {
                        "horizon": spec.horizon_days,
                        "degree_cutoff": "inf" if c is None else c,
                        "min_multiplicity": w,
                        "scorer": name,
                        "pairs": len(task) if task is not None else 0,
                        "positives": task.num_positive if task is not None else 0,
                        "auc": None,
                    }
                    if task is not None:
                        try:
                            row["auc"] = auc(predict_task(scorer, g, task, threads=threads), task.labels).auc
                        except InsufficientDataError as e:
                            logger.warning(f"horizon={horizon} c={c} w={w} {name}: {e}")
                    rows.append(row)
    return pd.DataFrame(rows, columns=list(GRID_COLUMNS))


def benchmark_horizons(args):
    if args.horizons:
        if any(h < 1 for h in args.horizons):
            raise ConfigError("--horizons must be positive day counts")
        return args.horizons
    if args.t0 is None:
        raise ConfigError("benchmark needs --t0 or --horizons")
    return [args.t1 - args.t0]


def cmd_benchmark(args, recorder):
    recorder.add_input(args.graph)
    g = read_edge_file(args.graph)
    grid = benchmark_grid(
        g, args.t1, benchmark_horizons(args), args.cutoffs_c, args.min_w, args.samples, args.scorers,
        args.seed, args.threads,
    )
    grid.to_csv(prepare_output(args.out), index=False, lineterminator="\n")
    recorder.add_output(args.out)
    print(grid.to_string(index=False))
    return out_dir_of(args.out)


def cmd_pipeline(args, recorder):
    """generate -> task -> features -> train -> predict -> eval in one work directory."""
    work = args.work_dir
    os.makedirs(work, exist_ok=True)

    def path(name):
        return os.path.join(work, name)

    cfg = build_config(
        SyntheticConfig,
        num_nodes=args.nodes, edges_per_new_node=args.m, intra_step_edges=args.intra,
        repeat_edges=args.repeat, days_per_step=args.days_per_step, seed=args.seed,
    )
    g = generate_synthetic(cfg)
    write_edge_file(g, path("graph.tsv"))

    last = g.last_day()
    t_train = int(round(last * args.train_fraction))
    t0 = int(round(last * args.eval_fraction))
    train_spec = build_config(
        TaskSpec, t0_day=t_train, t1_day=t0, degree_cutoff=args.cutoff_c, min_multiplicity=args.min_w, seed=args.seed
    )
    train_task = balanced_training_set(g, train_spec, args.train_size, args.seed)
    write_task_file(train_task, path("train_task.tsv"))
    eval_spec = build_config(
        TaskSpec, t0_day=t0, t1_day=last, degree_cutoff=args.cutoff_c, min_multiplicity=args.min_w,
        num_samples=args.samples, seed=args.seed,
    )
    if args.balanced_eval:
        if args.samples == "all":
            raise ConfigError("--balanced-eval needs an explicit --samples size")
        eval_task = balanced_training_set(g, eval_spec, int(args.samples), args.seed + 1)
    else:
        eval_task = sample_pairs(g, eval_spec, threads=args.threads)
    write_task_file(eval_task, path("eval_task.tsv"))

    feature_config = build_config(
        FeatureConfig, feature_set=args.set, snapshot_offsets=feature_set_definition(args.set)["default_offsets"],
        yeo_johnson=args.yeo_johnson,
    )
    fm = build_feature_matrix(g, train_task.pairs, t_train, feature_config, threads=args.threads)
    write_feature_csv(fm, path("train_features.csv"))

    definition = feature_set_definition(args.set)
    train_cfg = build_config(
        TrainConfig,
        hidden_layers=args.arch or definition["default_hidden"], learning_rate=args.lr, epochs=args.epochs,
        batch_size=args.batch, seed=args.seed, pca_components=definition["default_pca"],
    )
    trainer = MlpTrainer(train_cfg)
    trainer.fit(fm.values, train_task.labels, feature_header=read_feature_header(path("train_features.csv")))
    save_model(trainer.model, path("model.txt"))

    summary = {}
    for name in ("random", "pa", "cn", f"mlp:{path('model.txt')}"):
        scorer = parse_scorer(name, seed=args.seed)
        scores = predict_task(scorer, g, eval_task, threads=args.threads)
        label = name.split(":")[0]
        write_scores_csv(eval_task.pairs, scores, path(f"scores_{label}.csv"))
        result = auc(scores, eval_task.labels)
        summary[label] = result.auc
        if label == "mlp":
            write_roc_csv(result, path("roc_mlp.csv"))

    for label, value in summary.items():
        print(f"{label}\t{value!r}")
    with open(path("auc.json"), "w", encoding="utf-8", newline="\n") as f:
        json.dump(summary, f, indent=2, sort_keys=True)
        f.write("\n")
    recorder.add_output(work)
    return work


# ---------------------------------------------------------------- parser

class CliArgumentParser(argparse.ArgumentParser):
    """Raises UsageError instead of printing usage and exiting."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def common_flags():
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--threads", type=int, default=None, help="worker processes (default: available cores)")
    parent.add_argument("--config", default=None, help="key=value file whose keys are flag names; flags win")
    parent.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    return parent


def _generator_flags(p):
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--m", type=int, default=3, help="edges per new node")
    p.add_argument("--intra", type=int, default=0, help="new edges among existing nodes per step")
    p.add_argument("--repeat", type=int, default=0, help="repeats of existing edges per step")
    p.add_argument("--days-per-step", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)


def _task_flags(p):
    p.add_argument("--t0", type=parse_day, required=True, help="day index or YYYY-MM-DD")
    p.add_argument("--t1", type=parse_day, required=True, help="day index or YYYY-MM-DD")
    p.add_argument("--cutoff-c", type=parse_cutoff, default=None, help="max t0 degree of both endpoints, or inf")
    p.add_argument("--min-w", type=int, default=1, help="edge multiplicity a positive must reach at t1")


def _feature_flags(p):
    p.add_argument("--set", choices=["baseline15", "pairsim", "extended"], default="baseline15")
    p.add_argument("--yeo-johnson", action="store_true")


def build_parser():
    parser = CliArgumentParser(
        prog="linkbench",
        description="Temporal link prediction benchmark for semantic networks.",
        epilog=EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    parser.commands = {}
    parent = common_flags()

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[parent], help=help_text, epilog=EXIT_CODES_HELP,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.set_defaults(func=func)
        parser.commands[name] = p
        return p

    p = add("generate", cmd_generate, "generate a synthetic preferential-attachment edge file")
    _generator_flags(p)
    p.add_argument("--out", required=True)

    p = add("task", cmd_task, "sample labelled candidate pairs")
    p.add_argument("--graph", required=True)
    _task_flags(p)
    p.add_argument("--samples", type=parse_samples, default="all", help="pair count or 'all'")
    p.add_argument("--balanced", action="store_true", help="half positives, half negatives")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = add("features", cmd_features, "compute a feature matrix for a task")
    p.add_argument("--graph", required=True)
    p.add_argument("--task", required=True)
    _feature_flags(p)
    p.add_argument("--snapshots", type=int_list, default=None, help="days before t0, e.g. 0,365,730")
    p.add_argument("--lambdas-from", default=None, help="reuse Yeo-Johnson lambdas of another feature file")
    p.add_argument("--impute-window", type=int, default=365)
    p.add_argument("--no-impute", action="store_true")
    p.add_argument("--out", required=True)

    p = add("train", cmd_train, "train an MLP on a feature matrix")
    p.add_argument("--features", required=True)
    p.add_argument("--labels", required=True, help="task file whose pairs match the feature rows")
    p.add_argument("--arch", type=int_list, default=None, help="hidden layer sizes, e.g. 100,10")
    p.add_argument("--optimizer", choices=["adam", "sgd"], default="adam")
    p.add_argument("--lr", type=float, default=1e-3)
    p.add_argument("--epochs", type=int, default=50)
    p.add_argument("--batch", type=int, default=64)
    p.add_argument("--pca", type=int, default=None, help="PCA components inside the model")
    p.add_argument("--no-pca", action="store_true")
    p.add_argument("--validation", type=float, default=0.0, help="held-out fraction for validation AUC")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mlflow-uri", default=None)
    p.add_argument("--model-out", required=True)
    p.add_argument("--loss-out", default=None)

    p = add("predict", cmd_predict, "score task pairs")
    p.add_argument("--graph", required=True)
    p.add_argument("--task", required=True)
    p.add_argument("--scorer", required=True, help="pa, pa_product, cn, random or mlp:<model file>")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = add("eval", cmd_eval, "print the AUC of a score file")
    p.add_argument("--scores", required=True)
    p.add_argument("--task", required=True)
    p.add_argument("--roc-out", default=None)

    p = add("analyze", cmd_analyze, "network statistics per cutoff day")
    p.add_argument("--graph", required=True)
    p.add_argument("--vocab", default=None, help="id<TAB>concept file")
    p.add_argument("--cutoffs", type=day_list, default=None, help="days or dates, comma separated")
    p.add_argument("--k-min", type=float, default=1.0, help="lower bound of the power-law tail")
    p.add_argument("--out-dir", required=True)

    p = add("benchmark", cmd_benchmark, "AUC grid over horizons, degree cutoffs, multiplicities and scorers")
    p.add_argument("--graph", required=True)
    p.add_argument("--t0", type=parse_day, default=None, help="single horizon t1 - t0 when --horizons is not given")
    p.add_argument("--t1", type=parse_day, required=True)
    p.add_argument("--horizons", type=int_list, default=None, help="days before t1, e.g. 365,1095,1825")
    p.add_argument("--cutoffs-c", type=cutoff_list, default=[0, 2, 5, None])
    p.add_argument("--min-w", type=int_list, default=[1, 2, 3])
    p.add_argument("--samples", type=parse_samples, default=10000)
    p.add_argument("--scorers", type=name_list, default=["random", "pa", "cn"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = add("pipeline", cmd_pipeline, "generate, build tasks, train and evaluate end to end")
    _generator_flags(p)
    _feature_flags(p)
    p.add_argument("--cutoff-c", type=parse_cutoff, default=None)
    p.add_argument("--min-w", type=int, default=1)
    p.add_argument("--train-fraction", type=float, default=0.6, help="training t0 as a fraction of the last day")
    p.add_argument("--eval-fraction", type=float, default=0.8, help="evaluation t0 as a fraction of the last day")
    p.add_argument("--train-size", type=int, default=1000)
    p.add_argument("--samples", type=parse_samples, default=10000)
    p.add_argument("--balanced-eval", action="store_true", help="evaluate on half positives, half negatives")
    p.add_argument("--arch", type=int_list, default=None)
    p.add_argument("--lr", type=float, default=1e-3)
    p.add_argument("--epochs", type=int, default=50)
    p.add_argument("--batch", type=int, default=64)
    p.add_argument("--work-dir", required=True)
    return parser


def _apply_config_file(parser, argv):
    """Parse with --config values as subcommand defaults, so explicit flags win."""
    pre = CliArgumentParser(add_help=False)
    pre.add_argument("command", nargs="?")
    pre.add_argument("--config", default=None)
    known_args, _ = pre.parse_known_args(argv)
    sub = parser.commands.get(known_args.command)
    if not known_args.config or sub is None:
        return parser.parse_args(argv)

    config_path = known_args.config
    values = read_config_file(config_path)
    known = {action.dest: action for action in sub._actions}
    defaults = {}
    for key, value in values.items():
        if key not in known or key in ("config", "help"):
            raise ConfigError(f"unknown key '{key}' in {config_path} for '{known_args.command}'")
        action = known[key]
        if isinstance(action, argparse._StoreTrueAction):
            defaults[key] = value.strip().lower() in ("1", "true", "yes", "on")
        else:
            try:
                defaults[key] = action.type(value) if action.type else value
            except (ValueError, argparse.ArgumentTypeError) as e:
                raise ConfigError(f"bad value for '{key}' in {config_path}: {e}") from e
    for action in sub._actions:
        if action.dest in defaults and action.required:
            action.required = False
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def configure_logging(level):
    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


def report_error(record):
    sys.stderr.write(json.dumps(record, sort_keys=True, default=str) + "\n")
    sys.stderr.flush()


def main(argv=None):
    load_environment()
    parser = build_parser()
    try:
        args = _apply_config_file(parser, argv)
        configure_logging(args.log_level or default_log_level())
        if args.threads is None:
            args.threads = default_threads()
        if args.threads < 1:
            raise ConfigError("--threads must be >= 1")

        config = {k: v for k, v in vars(args).items() if k not in ("func", "config", "log_level", "threads")}
        recorder = ManifestRecorder(args.command, config, seed=getattr(args, "seed", None))
        recorder.add_input(args.config)
        out_dir = args.func(args, recorder)
        if out_dir is not None:
            recorder.write(out_dir)
        return 0
    except LinkBenchError as e:
        logger.debug("Command failed", exc_info=True)
        report_error(e.to_record())
        return e.exit_code
    except argparse.ArgumentTypeError as e:
        report_error({"error": "usage", "exit_code": 2, "message": str(e)})
        return 2
    except FileNotFoundError as e:
        report_error({"error": "missing_input", "exit_code": 3, "message": str(e)})
        return 3
    except Exception as e:
        logger.exception("Unexpected error")
        report_error({"error": "unexpected", "exit_code": 1, "message": str(e)})
        return 1


if __name__ == "__main__":
    sys.exit(main())
