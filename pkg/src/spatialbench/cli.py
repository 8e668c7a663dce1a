"""Command-line entry point: gen, eval, serve, synth.

Each subcommand validates its flags into a pydantic config and hands off to
one library call; the CLI itself holds no logic. Exit codes: 0 success,
2 usage error (argparse), 3 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from pydantic import BaseModel, ConfigDict, ValidationError

from spatialbench.benchgen.dataset import (
    DatasetProfile,
    emit_dataset,
    generate_dataset,
    load_manifest,
)
from spatialbench.benchgen.prompts import default_mode
from spatialbench.envs import TASKS, TIERS
from spatialbench.errors import ConfigError, SpatialBenchError
from spatialbench.evalharness import (
    HttpGateway,
    aggregate,
    emit_report,
    make_mock_gateway,
    run_eval,
)
from spatialbench.idf import (
    Stage1Profile,
    Stage2Profile,
    emit_sft,
    filter_overlap,
    synth_stage1,
    synth_stage2,
)


class GenConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    out: Path
    seed: int = 0
    count: int = 10
    tasks: tuple[str, ...] = TASKS
    tiers: tuple[str, ...] = TIERS
    profile: str = "default"


class EvalConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dataset: Path
    out: Path
    gateway: str = "mock:oracle"
    modality: str = "default"
    parallelism: int = 4
    token_cap: int = 8192
    seed: int = 0
    endpoint: str | None = None
    model: str | None = None
    api_key_env: str = "SPATIALBENCH_API_KEY"


class ServeConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dataset: Path
    host: str = "127.0.0.1"
    port: int = 8351
    log: Path | None = None
    ui: Path | None = None


class SynthConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    out: Path
    stage: int = 1
    count: int | None = None
    seed: int = 0
    dataset: Path | None = None


def _load_overrides(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    return data


def cmd_gen(config: GenConfig) -> int:
    if config.profile == "human-baseline":
        profile = DatasetProfile.human_baseline(config.seed)
    else:
        profile = DatasetProfile.default(
            config.seed, config.count, tasks=config.tasks, tiers=config.tiers
        )
    instances, assets = generate_dataset(profile)
    manifest = emit_dataset(instances, assets, config.out, profile)
    print(f"wrote {len(instances)} instances to {manifest}")
    return 0


def cmd_eval(config: EvalConfig) -> int:
    instances = load_manifest(config.dataset)
    if config.gateway.startswith("mock:"):
        gateway = make_mock_gateway(config.gateway.split(":", 1)[1], instances, seed=config.seed)
    elif config.gateway == "http":
        if not config.endpoint or not config.model:
            raise ConfigError("http gateway needs --endpoint and --model (or a config file)")
        gateway = HttpGateway(
            endpoint=config.endpoint,
            model=config.model,
            api_key_env=config.api_key_env,
            dataset_dir=Path(config.dataset),
        )
    else:
        raise ConfigError(f"unknown gateway {config.gateway!r}")

    records = []
    if config.modality == "default":
        # the benchmark's standard presentation per task
        for mode in ("VQA", "VTQA"):
            subset = [i for i in instances if default_mode(i.task) == mode]
            if subset:
                records.extend(
                    run_eval(gateway, subset, mode, config.parallelism, config.token_cap)
                )
        records.sort(key=lambda r: (r.task, r.tier, r.instance_id))
    else:
        records = run_eval(gateway, instances, config.modality, config.parallelism, config.token_cap)
    report = aggregate(records)
    summary = emit_report(records, report, config.out)
    accuracy = sum(r.correct for r in records) / len(records) if records else 0.0
    print(f"evaluated {len(records)} items, accuracy {accuracy:.3f}; report at {summary}")
    return 0


def cmd_serve(config: ServeConfig) -> int:
    import uvicorn

    from spatialbench.service import create_app

    app = create_app(config.dataset, config.log, config.ui)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    return 0


def cmd_synth(config: SynthConfig) -> int:
    if config.stage == 1:
        profile = Stage1Profile(total=config.count or 20_000, seed=config.seed)
        samples: list = synth_stage1(profile)
        out_path = Path(config.out) / "idf_stage1.jsonl"
    else:
        profile2 = Stage2Profile(total=config.count or 5_000, seed=config.seed)
        samples = synth_stage2(profile2)
        out_path = Path(config.out) / "idf_stage2.jsonl"
    dropped = 0
    if config.dataset is not None:
        benchmark = load_manifest(config.dataset)
        samples, dropped = filter_overlap(samples, benchmark)
    emit_sft(samples, out_path)
    print(
        f"stage {config.stage}: wrote {len(samples)} samples to {out_path}"
        f" (overlap filter removed {dropped})"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spatialbench", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a benchmark dataset")
    p_gen.add_argument("--out", required=True, type=Path)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--count", type=int, default=10, help="instances per task/tier cell")
    p_gen.add_argument("--task", choices=TASKS + ("all",), default="all")
    p_gen.add_argument("--tier", choices=TIERS + ("all",), default="all")
    p_gen.add_argument("--profile", choices=("default", "human-baseline"), default="default")

    p_eval = sub.add_parser("eval", help="run an agent over a dataset")
    p_eval.add_argument("--dataset", required=True, type=Path)
    p_eval.add_argument("--out", required=True, type=Path)
    p_eval.add_argument(
        "--gateway",
        default="mock:oracle",
        help="mock:oracle | mock:random | mock:garbage | http",
    )
    p_eval.add_argument("--modality", choices=("TQA", "VQA", "VTQA", "default"), default="default")
    p_eval.add_argument("--parallelism", type=int, default=4)
    p_eval.add_argument("--token-cap", type=int, default=8192)
    p_eval.add_argument("--seed", type=int, default=0)
    p_eval.add_argument("--config", help="JSON file with endpoint/model/api_key_env")

    p_serve = sub.add_parser("serve", help="serve the human-baseline API and player")
    p_serve.add_argument("--dataset", required=True, type=Path)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8351)
    p_serve.add_argument("--log", type=Path)
    p_serve.add_argument("--ui", type=Path)

    p_synth = sub.add_parser("synth", help="synthesize training data")
    p_synth.add_argument("--out", required=True, type=Path)
    p_synth.add_argument("--stage", type=int, choices=(1, 2), default=1)
    p_synth.add_argument("--count", type=int)
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("--dataset", type=Path, help="benchmark dir for overlap filtering")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            tasks = TASKS if args.task == "all" else (args.task,)
            tiers = TIERS if args.tier == "all" else (args.tier,)
            return cmd_gen(
                GenConfig(
                    out=args.out,
                    seed=args.seed,
                    count=args.count,
                    tasks=tasks,
                    tiers=tiers,
                    profile=args.profile,
                )
            )
        if args.command == "eval":
            overrides = _load_overrides(args.config)
            return cmd_eval(
                EvalConfig(
                    dataset=args.dataset,
                    out=args.out,
                    gateway=args.gateway,
                    modality=args.modality,
                    parallelism=args.parallelism,
                    token_cap=args.token_cap,
                    seed=args.seed,
                    **overrides,
                )
            )
        if args.command == "serve":
            return cmd_serve(
                ServeConfig(
                    dataset=args.dataset,
                    host=args.host,
                    port=args.port,
                    log=args.log,
                    ui=args.ui,
                )
            )
        return cmd_synth(
            SynthConfig(
                out=args.out,
                stage=args.stage,
                count=args.count,
                seed=args.seed,
                dataset=args.dataset,
            )
        )
    except (SpatialBenchError, ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
