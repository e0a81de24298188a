"""
Named run configurations and the key=value experiment file format.

Presets reproduce the 38 reference runs column by column (seed, T, p_c,
schedule, E, capture, throw). They run on whatever image the experiment
names, so absolute fitness values differ from the reference table; only the
ordering of strategies is expected to carry over.
"""

from __future__ import annotations

import re
from pathlib import Path

from config.experiment_spec import ExperimentSpec
from config.image_source_config import ImageSourceConfig
from config.neoteny_config import NeotenyConfig, to_bool
from config.run_config import RunConfig
from ga.schedules import BACK_P0, MutationSchedule, ScheduleKind
from imaging.quantize import DEFAULT_BINS_PER_AXIS

DEFAULT_OUTPUT = "results"
DESK_SCALE = 0.1

SHARED_KEYS = frozenset({
    "image", "synth_width", "synth_height", "synth_colors", "synth_noise", "synth_seed",
    "bins_per_axis", "output", "matrix", "scale",
})
RUN_KEYS = frozenset({
    "test_id", "preset", "seed", "generations", "pc", "schedule", "p0", "switch_g",
    "back_n", "back_T", "neoteny", "E", "capture", "throw", "companion", "protect_best",
    "pop", "bits_per_gene", "window", "elite",
})
_NEOTENY_KEYS = ("E", "capture", "throw", "companion", "protect_best")

# test, seed, T, schedule, E, capture, throw ("-" = no neoteny, "2*" = one archived + one random).
TABLE_1: tuple[tuple[int, int, int, str, str, str, str], ...] = (
    (1, 9, 3000, "C", "0", "-", "-"),
    (2, 9, 3000, "LD", "0", "-", "-"),
    (3, 9, 3000, "QD", "0", "-", "-"),
    (4, 9, 3000, "B[0.15]", "0", "-", "-"),
    (5, 9, 3000, "B[0.50]", "0", "-", "-"),
    (6, 9, 3000, "LD", "1", "[1,100]", "[1000,3000]"),
    (7, 9, 3000, "QD", "1", "[1,100]", "[1000,3000]"),
    (8, 9, 3000, "B[0.15]", "1", "[1,100]", "[1000,3000]"),
    (9, 9, 6000, "LD", "0", "-", "-"),
    (10, 7445, 3000, "C", "0", "-", "-"),
    (11, 7445, 3000, "LD", "0", "-", "-"),
    (12, 7445, 3000, "QD", "0", "-", "-"),
    (13, 7445, 3000, "LD", "1", "[1,100]", "[1000,3000]"),
    (14, 7445, 3000, "QD", "1", "[1,100]", "[1000,3000]"),
    (15, 7445, 3000, "QD", "1", "[1,100]", "[500,3000]"),
    (16, 7445, 3000, "QD", "1", "[1,100]", "[350,3000]"),
    (17, 7445, 3000, "QD", "1", "[1,100]", "[320,3000]"),
    (18, 7445, 3000, "QD", "1", "[1,100]", "[300,3000]"),
    (19, 7445, 3000, "QD", "1", "[1,100]", "[285,3000]"),
    (20, 7445, 3000, "QD", "1", "[1,100]", "[280,3000]"),
    (21, 7445, 3000, "QD", "1", "[1,100]", "[279,3000]"),
    (22, 7445, 3000, "QD", "1", "[1,100]", "[277,3000]"),
    (23, 7445, 3000, "QD", "1", "[1,100]", "[275,3000]"),
    (24, 7445, 3000, "QD", "1", "[1,100]", "[200,3000]"),
    (25, 7445, 3000, "QD", "1", "[1,100]", "[150,3000]"),
    (26, 9, 3000, "LD", "2", "[1,100]", "[1000,3000]"),
    (27, 7445, 3000, "QD", "1.5", "[1,100]", "[280,3000]"),
    (28, 7445, 3000, "QD", "2", "[1,100]", "[280,3000]"),
    (29, 7445, 3000, "QD", "3", "[1,100]", "[280,3000]"),
    (30, 7445, 3000, "QD", "5", "[1,100]", "[280,3000]"),
    (31, 7445, 3000, "QD", "1", "[100,200]", "[1000,3000]"),
    (32, 7445, 3000, "QD", "1", "[100,200]", "[280,3000]"),
    (33, 7445, 3000, "QD", "1", "[1,50]", "[280,3000]"),
    (34, 7445, 3000, "QD", "1", "[1,30]", "[280,3000]"),
    (35, 9, 3000, "LD", "2*", "[1,100]", "[1000,3000]"),
    (36, 9, 3000, "QD", "2*", "[1,100]", "[1000,3000]"),
    (37, 7445, 3000, "LD", "2*", "[1,100]", "[1000,3000]"),
    (38, 7445, 3000, "QD", "2*", "[1,100]", "[1000,3000]"),
)

TABLE_2_SEEDS = (9, 7445, 917, 14, 27)
TABLE_2_STRATEGIES = ("C", "LD", "QD", "LD/N", "QD/N", "LD/N+R", "QD/N+R")

TREND_SEEDS = TABLE_2_SEEDS
TREND_GENERATIONS = 1500
TREND_THROW = "[750,1500]"

_SCHEDULE_TEXT = re.compile(r"^\s*(?P<kind>[A-Za-z]+)\s*(?:\[\s*(?P<p0>[0-9.]+)\s*\])?\s*$")


def table_row_preset(test: int) -> dict[str, str]:
    for number, seed, t, schedule, e, capture, throw in TABLE_1:
        if number != test:
            continue
        values = {
            "test_id": f"paper-test-{number}",
            "seed": str(seed),
            "generations": str(t),
            "pc": "0.8",
            "schedule": schedule,
        }
        if capture == "-":
            values["neoteny"] = "off"
        else:
            values.update({"neoteny": "on", "capture": capture, "throw": throw, "E": e})
        return values
    raise ValueError(f"Unknown preset paper-test-{test}; valid tests are 1..{len(TABLE_1)}.")


def preset_values(name: str) -> dict[str, str]:
    m = re.fullmatch(r"paper-test-(\d+)", name.strip())
    if m is None:
        raise ValueError(f"Unknown run preset {name!r}; expected paper-test-<1..{len(TABLE_1)}>.")
    return table_row_preset(int(m.group(1)))


def _strategy_values(strategy: str, seed: int, throw: str = "[1000,3000]", generations: int = 3000) -> dict[str, str]:
    schedule, _, suffix = strategy.partition("/")
    tag = strategy.replace("/", "-").replace("+", "")
    values = {
        "test_id": f"{tag}-R{seed}",
        "seed": str(seed),
        "generations": str(generations),
        "pc": "0.8",
        "schedule": schedule,
        "neoteny": "off",
    }
    if suffix:
        values.update({
            "neoteny": "on",
            "E": "2*" if suffix == "N+R" else "1",
            "capture": "[1,100]",
            "throw": throw,
        })
    return values


def _table_1_runs() -> list[dict[str, str]]:
    return [table_row_preset(row[0]) for row in TABLE_1]


def _table_2_runs() -> list[dict[str, str]]:
    return [_strategy_values(st, seed) for st in TABLE_2_STRATEGIES for seed in TABLE_2_SEEDS]


def _trend_runs() -> list[dict[str, str]]:
    return [
        _strategy_values(st, seed, throw=TREND_THROW, generations=TREND_GENERATIONS)
        for st in ("C", "LD", "LD/N")
        for seed in TREND_SEEDS
    ]


# name -> (run values, scale factor)
MATRIX_PRESETS = {
    "paper-table-1": (_table_1_runs, 1.0),
    "desk-table-1": (_table_1_runs, DESK_SCALE),
    "paper-table-2": (_table_2_runs, 1.0),
    "desk-table-2": (_table_2_runs, DESK_SCALE),
    "trend-check": (_trend_runs, 1.0),
}


def matrix_preset(name: str) -> tuple[list[dict[str, str]], float]:
    try:
        build, factor = MATRIX_PRESETS[name.strip()]
    except KeyError:
        raise ValueError(f"Unknown matrix preset {name!r}; expected one of {sorted(MATRIX_PRESETS)}.") from None
    return build(), factor


def parse_schedule(values: dict[str, str]) -> MutationSchedule:
    """
    `schedule` is C, LD, QD, BACK or B[p0]; an explicit `p0` key wins over the bracket.
    """
    text = values.get("schedule", "LD")
    m = _SCHEDULE_TEXT.match(text)
    if m is None:
        raise ValueError(f"Cannot parse schedule {text!r}; expected C, LD, QD, BACK or B[p0].")
    kind = ScheduleKind.parse(m.group("kind"))
    if m.group("p0") is not None and kind is not ScheduleKind.BACK:
        raise ValueError(f"Only BACK schedules take a bracketed p0, got {text!r}.")

    p0: str | float | None = values.get("p0", m.group("p0"))
    if p0 is None and kind is ScheduleKind.BACK:
        p0 = BACK_P0
    return MutationSchedule.from_strings(
        kind=kind,
        p0=p0,
        switch_g=values.get("switch_g", "100"),
        n=values.get("back_n", "auto"),
        t_max=values.get("back_T", "auto"),
    )


def parse_neoteny(values: dict[str, str]) -> NeotenyConfig | None:
    """
    Neoteny is on when `neoteny` says so, or, absent that key, when any
    neoteny key is given. E=2* means one archived genotype plus a random companion.
    """
    if "neoteny" in values:
        enabled = to_bool(values["neoteny"])
    else:
        enabled = any(k in values for k in _NEOTENY_KEYS)
    if not enabled:
        return None

    e_text = values.get("E", "1").strip()
    companion = values.get("companion", "off")
    if e_text.endswith("*"):
        e_text = str(float(e_text[:-1]) - 1)
        companion = "on"
    return NeotenyConfig.from_strings(
        capture=values.get("capture", "[1,100]"),
        throw=values.get("throw", "[1000,3000]"),
        e=e_text,
        with_random_companion=companion,
        protect_best=values.get("protect_best", "off"),
    )


def build_run_config(values: dict[str, str], image: ImageSourceConfig, bins_per_axis: int) -> RunConfig:
    if "preset" in values:
        merged = preset_values(values["preset"])
        merged.update({k: v for k, v in values.items() if k != "preset"})
        values = merged
    unknown = set(values) - RUN_KEYS
    if unknown:
        raise ValueError(f"Unknown run keys: {', '.join(sorted(unknown))}.")
    return RunConfig.from_strings(
        seed=values.get("seed", "9"),
        schedule=parse_schedule(values),
        test_id=values.get("test_id", "run"),
        population_size=values.get("pop", "100"),
        generations=values.get("generations", "3000"),
        p_c=values.get("pc", "0.8"),
        neoteny=parse_neoteny(values),
        image=image,
        bins_per_axis=bins_per_axis,
        bits_per_gene=values.get("bits_per_gene", "3"),
        window=values.get("window", "1"),
        elite_carryover=values.get("elite", "off"),
    )


def _parse_sections(text: str) -> tuple[dict[str, str], list[tuple[str, dict[str, str]]]]:
    shared: dict[str, str] = {}
    sections: list[tuple[str, dict[str, str]]] = []
    current = shared
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if not name:
                raise ValueError(f"Line {lineno}: empty section name.")
            current = {}
            sections.append((name, current))
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ValueError(f"Line {lineno}: expected key=value, got {raw.strip()!r}.")
        if key not in SHARED_KEYS and key not in RUN_KEYS:
            raise ValueError(f"Line {lineno}: unknown key {key!r}.")
        if key in SHARED_KEYS and current is not shared:
            raise ValueError(f"Line {lineno}: {key!r} applies to the whole experiment and must come before any [run] section.")
        if key in current:
            raise ValueError(f"Line {lineno}: duplicate key {key!r}.")
        current[key] = value
    return shared, sections


def parse_config(text: str) -> ExperimentSpec:
    """
    Parse an experiment file.

    Keys before the first `[run-id]` section are shared: the image source,
    bins_per_axis, output, an optional `matrix` preset, `scale`, and run keys
    that act as defaults for every section. Each section adds one run whose
    test_id is the section name. With neither sections nor a matrix, the
    shared keys describe a single run.
    """
    shared, sections = _parse_sections(text)

    image = ImageSourceConfig.from_strings(
        path=shared.get("image"),
        synth_width=shared.get("synth_width", "128"),
        synth_height=shared.get("synth_height", "128"),
        synth_colors=shared.get("synth_colors", "6"),
        synth_noise=shared.get("synth_noise", "12"),
        synth_seed=shared.get("synth_seed", "9"),
    )
    bins = int(shared.get("bins_per_axis", str(DEFAULT_BINS_PER_AXIS)))
    scale = float(shared.get("scale", "1"))
    defaults = {k: v for k, v in shared.items() if k in RUN_KEYS}

    run_values: list[dict[str, str]] = []
    if "matrix" in shared:
        preset_runs, factor = matrix_preset(shared["matrix"])
        scale *= factor
        run_values.extend({**defaults, **r} for r in preset_runs)
    for name, values in sections:
        base = dict(defaults)
        if "preset" in values:
            base.update(preset_values(values["preset"]))
        base["test_id"] = name
        base.update({k: v for k, v in values.items() if k != "preset"})
        run_values.append(base)
    if not run_values:
        run_values.append(defaults)

    runs: list[RunConfig] = []
    for values in run_values:
        label = values.get("test_id", values.get("preset", "run"))
        try:
            cfg = build_run_config(values, image, bins)
            if scale != 1.0:
                cfg = cfg.scaled(scale)
        except ValueError as exc:
            raise ValueError(f"Run {label!r}: {exc}") from exc
        runs.append(cfg)

    spec = ExperimentSpec(
        runs=tuple(runs),
        image=image,
        bins_per_axis=bins,
        output_dir=Path(shared.get("output", DEFAULT_OUTPUT)).expanduser().resolve(),
    )
    spec.validate()
    return spec


def spec_from_values(
    runs: list[dict[str, str]],
    image: ImageSourceConfig,
    bins_per_axis: int,
    output_dir: str | Path,
    scale: float = 1.0,
) -> ExperimentSpec:
    """Build a spec from already-split run values, as the CLI flags produce them."""
    configs = [build_run_config(v, image, bins_per_axis) for v in runs]
    if scale != 1.0:
        configs = [c.scaled(scale) for c in configs]
    spec = ExperimentSpec(
        runs=tuple(configs),
        image=image,
        bins_per_axis=bins_per_axis,
        output_dir=Path(output_dir).expanduser().resolve(),
    )
    spec.validate()
    return spec

