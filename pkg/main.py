import argparse
import sys
from dataclasses import replace
from pathlib import Path

from utils.terminal_ui import Color, type_print, stage, print_table

from app.settings import build_settings
from app.container import build_container
from app.pipeline import ExperimentPipeline
from app.presets import DEFAULT_OUTPUT, RUN_KEYS, parse_config, parse_schedule, spec_from_values
from config.image_source_config import ImageSourceConfig
from ga.oracle import brute_force_min_j
from ga.schedules import MutationSchedule
from imaging.quantize import DEFAULT_BINS_PER_AXIS, quantize
from imaging.synth import synth_image
from inout.ppm_loader import PpmLoader
from services.experiment_service import CURVE_G_MAX, CURVE_N, CURVE_T, DEFAULT_CURVE_SCHEDULES


def _add_image_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--image", default=None, help="PPM file to segment (default: synthetic image)")
    p.add_argument("--synth-width", default="128")
    p.add_argument("--synth-height", default="128")
    p.add_argument("--synth-colors", default="6")
    p.add_argument("--synth-noise", default="12")
    p.add_argument("--synth-seed", default="9")
    p.add_argument("--bins-per-axis", default=str(DEFAULT_BINS_PER_AXIS))


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    for key in sorted(RUN_KEYS):
        p.add_argument(f"--{key.replace('_', '-')}", dest=key, default=None)


def _add_harness_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", default=DEFAULT_OUTPUT, help="Output folder")
    p.add_argument("--max-parallel", default="1")
    p.add_argument("--report-every", default="100", help="Diversity sample interval in run reports (0 = off)")
    p.add_argument("--ascii-ppm", action="store_true", help="Write segmented images as P3 instead of P6")


def _image_cfg(args: argparse.Namespace) -> ImageSourceConfig:
    return ImageSourceConfig.from_strings(
        path=args.image,
        synth_width=args.synth_width,
        synth_height=args.synth_height,
        synth_colors=args.synth_colors,
        synth_noise=args.synth_noise,
        synth_seed=args.synth_seed,
    )


def _run_values(args: argparse.Namespace) -> dict[str, str]:
    return {k: getattr(args, k) for k in RUN_KEYS if getattr(args, k) is not None}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="neoteny-seg",
        description="GA colour segmentation with dynamic mutation schedules and artificial neoteny.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="Run one GA configuration")
    p_run.add_argument("--config", default=None, help="key=value experiment file describing a single run")
    _add_image_flags(p_run)
    _add_run_flags(p_run)
    p_run.add_argument("--scale", default="1")
    _add_harness_flags(p_run)
    p_run.set_defaults(output=None)

    p_matrix = sub.add_parser("matrix", help="Run every configuration of an experiment file or matrix preset")
    src = p_matrix.add_mutually_exclusive_group(required=True)
    src.add_argument("spec_file", nargs="?", default=None)
    src.add_argument("--preset", dest="matrix_preset", default=None, help="paper-table-1, desk-table-1, paper-table-2, desk-table-2, trend-check")
    p_matrix.add_argument("--aggregate", action="store_true", help="Also write strategies.csv")
    _add_harness_flags(p_matrix)
    p_matrix.set_defaults(output=None)

    p_agg = sub.add_parser("aggregate", help="Pivot summary CSVs into a strategy x seed table")
    p_agg.add_argument("summaries", nargs="+")
    p_agg.add_argument("--out", required=True)

    p_init = sub.add_parser("init-report", help="Initial-population fitness statistics per seed")
    p_init.add_argument("--seeds", default="9,7445,917,14,27")
    p_init.add_argument("--pop", default="100")
    p_init.add_argument("--bits-per-gene", default="3")
    p_init.add_argument("--out", required=True)
    _add_image_flags(p_init)

    p_sched = sub.add_parser("schedules", help="Mutation rate curves per generation")
    p_sched.add_argument("--schedule", action="append", default=None, help="C, LD, QD, BACK or B[p0]; repeatable")
    p_sched.add_argument("--g-max", default=str(CURVE_G_MAX))
    p_sched.add_argument("--back-n", default=str(CURVE_N))
    p_sched.add_argument("--back-T", dest="back_T", default=str(CURVE_T))
    p_sched.add_argument("--switch-g", default="100")
    p_sched.add_argument("--out", required=True)

    p_synth = sub.add_parser("synth", help="Write a synthetic test image")
    p_synth.add_argument("--width", default="128")
    p_synth.add_argument("--height", default="128")
    p_synth.add_argument("--colors", default="6")
    p_synth.add_argument("--noise", default="12")
    p_synth.add_argument("--seed", default="9")
    p_synth.add_argument("--ascii", action="store_true")
    p_synth.add_argument("--out", required=True)

    p_oracle = sub.add_parser("oracle", help="Exhaustive optimum of a small instance")
    _add_image_flags(p_oracle)
    p_oracle.add_argument("--bits", default="2", help="Bits per gene")

    return parser


def _container(args: argparse.Namespace, output: str | Path, create_dirs: bool = True) -> dict:
    app_cfg = build_settings(
        output_folder=output,
        create_dirs=create_dirs,
        max_parallel=getattr(args, "max_parallel", "1"),
        report_every=getattr(args, "report_every", "100"),
        binary_ppm=not getattr(args, "ascii_ppm", False),
    )
    return build_container(app_cfg)


def _cmd_run(args: argparse.Namespace) -> None:
    if args.config is not None:
        spec = parse_config(Path(args.config).read_text(encoding="utf-8"))
        if len(spec.runs) != 1:
            raise ValueError(f"'run' expects exactly one run, {args.config} describes {len(spec.runs)}; use 'matrix'.")
        if args.output is not None:
            spec = replace(spec, output_dir=Path(args.output).expanduser().resolve())
    else:
        spec = spec_from_values(
            [_run_values(args)],
            _image_cfg(args),
            int(args.bins_per_axis),
            args.output or DEFAULT_OUTPUT,
            scale=float(args.scale),
        )

    deps = _container(args, spec.output_dir)
    pipeline = ExperimentPipeline(experiments=deps["experiments"])
    cfg = spec.runs[0]
    with stage(f"Running {cfg.test_id} ({cfg.strategy_label}, seed {cfg.seed}, T={cfg.generations})"):
        outcome, _ = pipeline.run(spec)

    result = outcome.results[cfg.test_id]
    type_print(f"m={result.m} cubes, n={result.n} bits", color=Color.BLUE)
    type_print(f"Final best fitness: {result.final_best!r} (J={result.best.j!r}, generation {result.best_generation})", color=Color.BLUE)
    type_print(f"Summary written to {outcome.summary_path}", color=Color.GREEN)


def _cmd_matrix(args: argparse.Namespace) -> None:
    if args.spec_file is not None:
        text = Path(args.spec_file).read_text(encoding="utf-8")
    else:
        text = f"matrix = {args.matrix_preset}\n"
    spec = parse_config(text)
    if args.output is not None:
        spec = replace(spec, output_dir=Path(args.output).expanduser().resolve())

    deps = _container(args, spec.output_dir)
    pipeline = ExperimentPipeline(experiments=deps["experiments"])
    type_print(f"Running {len(spec.runs)} runs on {spec.image.describe()} (bins_per_axis={spec.bins_per_axis})", color=Color.BLUE)

    def _done(cfg, result) -> None:
        type_print(f"  {cfg.test_id}: {result.final_best:.6f} in {result.seconds:.1f}s", color=Color.DIM)

    outcome, matrix = pipeline.run(spec, aggregate=args.aggregate, on_run_done=_done)
    type_print(f"Summary written to {outcome.summary_path}", color=Color.GREEN)
    if matrix is not None:
        header, rows = matrix.as_table()
        print_table(header, rows)


def _cmd_aggregate(args: argparse.Namespace) -> None:
    out = Path(args.out)
    deps = _container(args, out.parent, create_dirs=False)
    matrix = deps["experiments"].write_aggregate([Path(p) for p in args.summaries], out)
    header, rows = matrix.as_table()
    print_table(header, rows)
    type_print(f"Strategy table written to {out}", color=Color.GREEN)


def _cmd_init_report(args: argparse.Namespace) -> None:
    seeds = [int(s) for s in args.seeds.split(",") if s.strip()]
    if not seeds:
        raise ValueError("--seeds needs at least one seed.")
    out = Path(args.out)
    spec = spec_from_values(
        [{"seed": str(seeds[0]), "pop": args.pop, "bits_per_gene": args.bits_per_gene}],
        _image_cfg(args),
        int(args.bins_per_axis),
        out.parent,
    )
    deps = _container(args, out.parent, create_dirs=False)
    header, rows = deps["experiments"].write_init_pop_report(seeds, spec.runs[0], out)
    print_table(header, rows)
    type_print(f"Initial population report written to {out}", color=Color.GREEN)


def _cmd_schedules(args: argparse.Namespace) -> None:
    if args.schedule:
        schedules: list[MutationSchedule] = [
            parse_schedule({
                "schedule": text,
                "switch_g": args.switch_g,
                "back_n": args.back_n,
                "back_T": args.back_T,
            })
            for text in args.schedule
        ]
    else:
        schedules = list(DEFAULT_CURVE_SCHEDULES)
    out = Path(args.out)
    deps = _container(args, out.parent, create_dirs=False)
    deps["experiments"].write_schedule_curves(schedules, int(args.g_max), out)
    type_print(f"Schedule curves written to {out}", color=Color.GREEN)


def _cmd_synth(args: argparse.Namespace) -> None:
    out = Path(args.out)
    deps = _container(args, out.parent, create_dirs=False)
    img = synth_image(int(args.width), int(args.height), int(args.colors), int(args.noise), int(args.seed))
    loader = replace(deps["loader"], binary_output=not args.ascii)
    loader.save(out, img)
    type_print(f"{img.width}x{img.height} image with {img.distinct_colors()} distinct colours written to {out}", color=Color.GREEN)


def _cmd_oracle(args: argparse.Namespace) -> None:
    image = _image_cfg(args)
    if image.path is not None:
        img = PpmLoader().load(image.path)
    else:
        img = synth_image(image.synth_width, image.synth_height, image.synth_colors, image.synth_noise, image.synth_seed)
    cubes = quantize(img, int(args.bins_per_axis))
    with stage(f"Enumerating every assignment of {cubes.m} cubes"):
        result = brute_force_min_j(cubes, int(args.bits))
    type_print(f"best_J: {result.best_j!r}", color=Color.BLUE)
    type_print(f"labels: {list(result.best_labels.labels)}", color=Color.BLUE)
    type_print(f"evaluated: {result.evaluated_count}", color=Color.BLUE)


_COMMANDS = {
    "run": _cmd_run,
    "matrix": _cmd_matrix,
    "aggregate": _cmd_aggregate,
    "init-report": _cmd_init_report,
    "schedules": _cmd_schedules,
    "synth": _cmd_synth,
    "oracle": _cmd_oracle,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _COMMANDS[args.command](args)
    except Exception as e:
        type_print(f"Error: {e}", color=Color.RED, stream=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
