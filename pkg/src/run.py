# src/run.py
"""curved flag kernel 실험 CLI

python src/run.py [--config PATH] [--out DIR] [--seed N] [--threads N] [--tolerance-scale F] <subcommand>
"""

import argparse
import json
import os
import sys
import time
from datetime import datetime
from pathlib import Path

from dotenv import load_dotenv

from common import ArgumentError, CurvedFlagError, configure
from decomposition import decomposition_report, parabolic_multiplier
from evaluation import PLOT_KINDS, export_plot_data, load_field, save_field
from flag2d import sample_curved_kernel
from lp_operator import apply_multiplier
from schemas import ExperimentConfig, build_report, load_config, parse_config
from suites import SuiteContext, run_suite

OUTPUT_ENV = "CURVED_FLAG_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = "outputs"


# 화면 + 파일 동시 출력
class DualLogger:
    def __init__(self, filepath):
        self.terminal = sys.stdout
        self.log = open(filepath, "a", encoding="utf-8")

    def write(self, message):
        self.terminal.write(message)
        self.log.write(message)

    def flush(self):
        self.terminal.flush()
        self.log.flush()

    def close(self):
        self.log.close()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="curved flag kernel 수치 검증 실험")
    parser.add_argument("--config", type=str, default=None, help="YAML 실험 설정 파일")
    parser.add_argument("--out", type=str, default=None, help=f"출력 디렉터리 (우선순위: --out > ${OUTPUT_ENV} > config.output_dir)")
    parser.add_argument("--seed", type=int, default=None, help="난수 seed (설정 파일 값을 덮어씀)")
    parser.add_argument("--threads", type=int, default=None, help="작업 스레드 수 (0 = CPU 수)")
    parser.add_argument("--tolerance-scale", type=float, default=None, help="모든 임계값 배율")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("synthesize", help="공간 격자 위 K(x,y) = M(x, y - c₀x²) → kernel.cfmg")
    sub.add_parser("multiplier", help="포물선 격자 위 휜 multiplier → multiplier.cfmg")
    sub.add_parser("decompose", help="L₁/L₂ 분해와 위상 적합 → l1.cfmg, l2.cfmg, report.json")

    verify = sub.add_parser("verify", help="설정의 모든 스위트 실행 → report.json")
    verify.add_argument("--print-schema", action="store_true", help="설정 JSON 스키마만 출력")

    apply = sub.add_parser("apply", help="Tf = F⁻¹[m·Ff] → applied.cfmg")
    apply.add_argument("--multiplier", required=True, help="multiplier 격자 파일")
    apply.add_argument("--input", required=True, help="입력 함수 격자 파일")

    export = sub.add_parser("export", help="그래프용 TSV → <kind>.tsv")
    export.add_argument("--source", required=True, help="격자 파일 또는 report.json")
    export.add_argument("--kind", required=True, choices=PLOT_KINDS)
    return parser


def resolve_output_dir(args, config: ExperimentConfig = None) -> Path:
    if args.out:
        return Path(args.out)
    if os.environ.get(OUTPUT_ENV):
        return Path(os.environ[OUTPUT_ENV])
    return Path(config.output_dir if config is not None else DEFAULT_OUTPUT_DIR)


def apply_overrides(args, config: ExperimentConfig) -> ExperimentConfig:
    """--seed, --threads, --tolerance-scale 를 설정에 반영하고 전역 설정을 한 번 갱신"""
    data = config.model_dump(mode="json")
    if args.seed is not None:
        data["seed"] = args.seed
    if args.threads is not None:
        data["threads"] = args.threads
    if args.tolerance_scale is not None:
        data["tolerances"]["scale"] = args.tolerance_scale
    config = parse_config(data)
    configure(threads=config.threads, tolerance_scale=config.tolerances.scale)
    return config


def _write_report(out_dir: Path, config: ExperimentConfig, reports: list, timings: dict, artifacts: list) -> Path:
    report = build_report(
        config.model_dump(mode="json"),
        reports,
        timings,
        seed=config.seed,
        threads=config.threads,
        tolerance_scale=config.tolerances.scale,
        artifacts=artifacts,
    )
    path = out_dir / "report.json"
    path.write_text(report.to_json() + "\n", encoding="utf-8")
    status = "✅ 통과" if report.passed else "❌ 미통과"
    print(f"💾 [Report] {path} ({status}, 스위트 {len(reports)}개)")
    return path


def _save(field, out_dir: Path, name: str, artifacts: list = None) -> Path:
    path = save_field(field, out_dir / name)
    print(f"💾 [Grid] {name}: {field.shape[0]}×{field.shape[1]} → {path}")
    if artifacts is not None:
        artifacts.append(name)
    return path


# ---------------------------------------------------------------------------
# 하위 명령
# ---------------------------------------------------------------------------

def cmd_synthesize(config: ExperimentConfig, out_dir: Path, args) -> int:
    ctx = SuiteContext(config)
    axis = ctx.torus.axis
    _save(sample_curved_kernel(ctx.kernel_spec, axis, axis), out_dir, "kernel.cfmg")
    return 0


def cmd_multiplier(config: ExperimentConfig, out_dir: Path, args) -> int:
    ctx = SuiteContext(config)
    grid = ctx.parabolic_grid
    _save(parabolic_multiplier(ctx.decomposition_spec, grid.a_values, grid.delta_values), out_dir, "multiplier.cfmg")
    return 0


def cmd_decompose(config: ExperimentConfig, out_dir: Path, args) -> int:
    ctx = SuiteContext(config)
    start = time.perf_counter()
    result = ctx.decomposition
    report = decomposition_report(result)
    elapsed = time.perf_counter() - start
    report.print_summary()

    artifacts = []
    _save(result.l1, out_dir, "l1.cfmg", artifacts)
    _save(result.l2, out_dir, "l2.cfmg", artifacts)
    _write_report(out_dir, config, [report], {report.suite: elapsed}, artifacts)
    return 0 if report.all_passed else 1


def cmd_verify(config: ExperimentConfig, out_dir: Path, args) -> int:
    ctx = SuiteContext(config)
    reports, timings, artifacts = [], {}, []

    def finish():
        if ctx.has_decomposition:
            _save(ctx.decomposition.l1, out_dir, "l1.cfmg", artifacts)
            _save(ctx.decomposition.l2, out_dir, "l2.cfmg", artifacts)
        return _write_report(out_dir, config, reports, timings, artifacts)

    suites = config.ordered_suites()
    print(f"🧮 [Verify] 스위트 {len(suites)}개: {', '.join(s.value for s in suites)}")
    for suite in suites:
        start = time.perf_counter()
        try:
            report = run_suite(suite, ctx)
        except CurvedFlagError:
            print(f"❌ [Verify] {suite.value} 중단. 완료된 스위트까지 리포트를 남깁니다.")
            finish()
            raise
        timings[suite.value] = time.perf_counter() - start
        report.print_summary()
        reports.append(report)

    finish()
    passed = all(r.all_passed for r in reports)
    print("✅ [Verify] 모든 스위트 통과" if passed else "⚠️ [Verify] 미통과 스위트 있음")
    return 0 if passed else 1


def cmd_apply(config, out_dir: Path, args) -> int:
    m = load_field(args.multiplier)
    f = load_field(args.input)
    _save(apply_multiplier(m, f), out_dir, "applied.cfmg")
    return 0


def cmd_export(config, out_dir: Path, args) -> int:
    source_path = Path(args.source)
    if source_path.suffix.lower() == ".json":
        if not source_path.exists():
            raise ArgumentError(f"report file not found: {source_path}")
        source = json.loads(source_path.read_text(encoding="utf-8"))
    else:
        source = load_field(source_path)
    export_plot_data(source, args.kind, out_dir / f"{args.kind}.tsv")
    return 0


COMMANDS = {
    "synthesize": cmd_synthesize,
    "multiplier": cmd_multiplier,
    "decompose": cmd_decompose,
    "verify": cmd_verify,
    "apply": cmd_apply,
    "export": cmd_export,
}
NEEDS_CONFIG = {"synthesize", "multiplier", "decompose", "verify"}


def _report_error(e: CurvedFlagError):
    print(f"🚨 오류: {e}")
    for line in getattr(e, "diagnostics", []):
        print(f"   - {line}")


def main(argv=None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)

    if args.command == "verify" and args.print_schema:
        print(json.dumps(ExperimentConfig.model_json_schema(), indent=2, ensure_ascii=False))
        return 0

    try:
        config = None
        if args.command in NEEDS_CONFIG or args.config:
            config = apply_overrides(args, load_config(args.config))
        else:
            configure(threads=args.threads, tolerance_scale=args.tolerance_scale)
    except CurvedFlagError as e:
        _report_error(e)
        return e.exit_code

    out_dir = resolve_output_dir(args, config)
    log_dir = out_dir / "logs"
    log_dir.mkdir(parents=True, exist_ok=True)
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    log_path = log_dir / f"run_{timestamp}.txt"

    # 이후 모든 print() 는 로그 파일에도 기록된다
    logger = DualLogger(log_path)
    sys.stdout = logger
    try:
        print(f"📝 로그가 저장됩니다: {log_path}")
        return COMMANDS[args.command](config, out_dir, args)
    except CurvedFlagError as e:
        _report_error(e)
        return e.exit_code
    finally:
        sys.stdout = logger.terminal
        logger.close()


if __name__ == "__main__":
    sys.exit(main())
