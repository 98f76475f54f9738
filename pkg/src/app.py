import os, sys, json, time, argparse
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from utils.logging_config import setup_logging, get_logger
from utils.version import __version__

# Initialize logging early - will be reconfigured based on debug mode
setup_logging()
logger = get_logger(__name__)

from domain import Report
from factory.data.formatters import report_to_text
from factory.data.generators import BUILTIN_SUBGROUPS, subgroup_from_document, witnesses_from_document
from factory.data.models import Instance
from factory.data.provider import DEMO_INSTANCES, build_instance, load_json, resolve_ideal
from services import ActionService, EnumerationService, LoggingService, SandwichService, SUITES, VerificationService
from utils.config import SETTINGS, Settings
from utils.errors import OddformError


# =========================
#         HELPERS
# =========================
def _settings(args: argparse.Namespace) -> Settings:
    overrides = {"seed": args.seed, "samples": args.samples}
    if args.cap is not None:
        overrides.update(enumeration_cap=args.cap, closure_cap=args.cap)
    return SETTINGS.with_overrides(**overrides)


def _instance(args: argparse.Namespace, settings: Settings, default: Optional[str] = None) -> Instance:
    return build_instance(args.config or default, cap=settings.ring_cap)


def _ideal(args: argparse.Namespace, instance: Instance) -> frozenset[int]:
    """--ideal as a JSON list of element refs, else the config's ideal, else {0}"""
    if args.ideal is not None:
        try:
            refs = json.loads(args.ideal)

        except json.JSONDecodeError:
            refs = [args.ideal]
        return resolve_ideal(instance.ctx, refs if isinstance(refs, list) else [refs])

    if instance.ideal is not None:
        return instance.ideal
    return frozenset({instance.ctx.ring.zero})


# =========================
#         COMMANDS
# =========================
def cmd_verify(args: argparse.Namespace, report: Report, settings: Settings) -> None:
    instance = _instance(args, settings)
    report.instance = instance.describe()
    workload = VerificationService.prepare(instance, settings)
    report.add(*VerificationService.run(workload, args.suite))
    report.data = {"suite": args.suite, **workload.notes}


def cmd_enumerate(args: argparse.Namespace, report: Report, settings: Settings) -> None:
    instance = _instance(args, settings)
    report.instance = instance.describe()
    if args.what == "form-parameters":
        report.data = EnumerationService.form_parameters(instance, settings.enumeration_cap)
    else:
        report.data = EnumerationService.relative(instance, _ideal(args, instance), settings.enumeration_cap)


def cmd_orbits(args: argparse.Namespace, report: Report, settings: Settings) -> None:
    instance = _instance(args, settings)
    report.instance = instance.describe()
    witnesses = witnesses_from_document(instance.ctx, load_json(args.witnesses)) if args.witnesses else []
    checks, report.data = ActionService.orbits(instance, _ideal(args, instance), witnesses, settings.enumeration_cap)
    report.add(*checks)


def cmd_sandwich(args: argparse.Namespace, report: Report, settings: Settings) -> None:
    source = args.subgroup
    instance = _instance(args, settings, default="m2f2" if source in BUILTIN_SUBGROUPS else None)
    report.instance = instance.describe()
    document = load_json(source) if Path(source).suffix == ".json" else source
    handle = subgroup_from_document(instance.ctx, document)
    checks, report.data = SandwichService.check(handle, settings.closure_cap)
    report.add(*checks)


def cmd_repro_m2f2(args: argparse.Namespace, report: Report, settings: Settings) -> None:
    instance = build_instance({**DEMO_INSTANCES["m2f2"], "n": args.n}, cap=settings.ring_cap)
    report.instance = instance.describe()
    checks, report.data = ActionService.scenario(args.n)
    report.add(*checks)


COMMANDS = {
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "orbits": cmd_orbits,
    "sandwich": cmd_sandwich,
    "repro-m2f2": cmd_repro_m2f2,
    "repro-example174": cmd_repro_m2f2,
}


# =========================
#           APP
# =========================
def run(args: argparse.Namespace) -> Report:
    """Run one command; library errors end up in ``report.error``"""
    settings = _settings(args)
    report = Report(command=args.command, seed=settings.seed)
    started = time.perf_counter()

    try:
        COMMANDS[args.command](args, report, settings)

    except OddformError as e:
        logger.error(f"❌ {e.code}: {e}")
        report.error = {**e.to_dict(), "exit_code": e.exit_code}

    except ValidationError as e:
        logger.error(f"❌ Invalid config: {e.error_count()} errors")
        report.error = {
            "code": "config-invalid",
            "message": str(e),
            "details": {"errors": json.loads(e.json())},
            "exit_code": 2,
        }

    report.elapsed_seconds = time.perf_counter() - started
    return report


def emit(report: Report, args: argparse.Namespace) -> None:
    if args.out:
        Path(args.out).write_text(report.to_json() + "\n")
        logger.info(f"✅ Report written to {args.out}")

    if args.pretty:
        print(report_to_text(report))
    elif not args.out:
        print(report.to_json())


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None, help=f"Instance JSON file or demo name ({', '.join(DEMO_INSTANCES)})")
    parser.add_argument("--out", default=None, help="Write the JSON report to this file")
    parser.add_argument("--seed", type=int, default=None, help="Seed for sampled checks")
    parser.add_argument("--cap", type=int, default=None, help="Bound for every enumeration and closure")
    parser.add_argument("--samples", type=int, default=None, help="Samples per non-exhaustive check")
    parser.add_argument("--strict", action="store_true", help="Exit 3 when a check was truncated")
    parser.add_argument("--pretty", action="store_true", help="Human-readable tables instead of JSON on stdout")
    parser.add_argument("--debug", action="store_true", help="Enable debug logging")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oddform", description="oddform - odd unitary groups over finite rings")
    parser.add_argument("--version", action="version", version=f"oddform {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="Run verification suites")
    verify.add_argument("--suite", choices=SUITES + ("all",), default="all")

    enumerate_ = commands.add_parser("enumerate", help="List form parameters or relative form parameters")
    enumerate_.add_argument("--what", choices=("form-parameters", "relative"), default="form-parameters")
    enumerate_.add_argument("--ideal", default=None, help='Generators of I as a JSON list, e.g. \'["zero"]\'')

    orbits = commands.add_parser("orbits", help="Orbits of the conjugation action on relative form parameters")
    orbits.add_argument("--ideal", default=None, help="Generators of I as a JSON list")
    orbits.add_argument("--witnesses", default=None, help="JSON file with a list of generator words")

    sandwich = commands.add_parser("sandwich", help="Level and sandwich containments of a subgroup")
    sandwich.add_argument("--subgroup", default="m2f2_block_H", help="Subgroup JSON file or built-in name")

    repro = commands.add_parser("repro-m2f2", aliases=["repro-example174"], help="Reproduce the M2(F2) scenario")
    repro.add_argument("--n", type=int, default=3)

    for sub in (verify, enumerate_, orbits, sandwich, repro):
        _add_common(sub)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    logging_service = LoggingService()
    if args.debug:
        os.environ["ODDFORM_DEBUG"] = "true"
    logging_service.configure(args.debug)
    logging_service.start_run()

    logger.info(f"🚀 oddform v{__version__}: {args.command}")
    report = logging_service.attach(run(args))
    emit(report, args)

    code = report.exit_code(args.strict)
    logger.info(f"{'✅' if code == 0 else '❌'} {args.command} finished with exit code {code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
