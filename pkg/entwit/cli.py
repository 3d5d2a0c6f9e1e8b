"""
Командная строка entwit.

Подкоманды: state, expect, witness, scan, analyze, reproduce.
Коды выхода: 0 - успех, 1 - внутренняя ошибка или проваленные проверки,
2 - некорректные входные данные.
"""

import argparse
import logging
import sys
from typing import List, Optional

from entwit.bell.operators import klyshko_operator, mermin_operator
from entwit.config.analysis_config import DEFAULT_OUTPUT_DIR, create_default_config
from entwit.config.published_values import (
    PAN_HYPOTHETICAL_FIDELITY,
    PAN_OFFDIAG,
    RHO_MIX_AMPLITUDE,
    RHO_MIX_OFFDIAG,
    RHO_MIX_POPULATION,
    RHO_MIX_PROCEDURE_FIDELITY,
    RHO_MIX_TRUE_FIDELITY,
    W_ALPHA,
    WORST_CASE_CORRECTED_FIDELITY,
    WORST_CASE_CORRECTED_OFFDIAG,
    WORST_CASE_HALF_FRACTIONS,
    WORST_CASE_W,
)
from entwit.exceptions import ArgumentError, ValidationError
from entwit.experiments.bouwmeester import build_w_state, fit_w_state, targets_from_record
from entwit.experiments.pan import analyze_pan
from entwit.experiments.rauschenbeutel import analyze_rauschenbeutel, demonstrate_rho_mix
from entwit.experiments.records import load_bundled_record, load_record_file
from entwit.experiments.reproducer import Reproducer
from entwit.hilbert.operators import expectation, pauli_string
from entwit.hilbert.states import eq5_state, ghz, psi_b, rho_mix
from entwit.models.config import AnalysisConfig
from entwit.models.enums import Plane, ScanObservable, StatePreset
from entwit.models.measurement import MeasuredValue
from entwit.utils.export import read_scan_csv, write_scan_csv
from entwit.utils.formatting import fmt, fmt_quantity, render_report
from entwit.utils.serialization import load_settings, load_state, save_state, write_json
from entwit.utils.validation import validate_density
from entwit.witness.conditions import (
    FIDELITY_THRESHOLD,
    condition_a,
    condition_a_from_data,
    condition_b,
    fidelity,
    resolve_target,
)
from entwit.witness.harmonics import OBSERVABLE_MAX_FREQUENCY, harmonics, scan_observable
from entwit.witness.optimizer import optimize_settings

logger = logging.getLogger("entwit")

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
ANALYSES = ("pan", "rauschenbeutel", "bouwmeester", "rho-mix")
PLANES = ("xy", "xz", "free")


def _grid_points(minimum: int):
    def parse(text: str) -> int:
        value = int(text)
        if value < minimum:
            raise argparse.ArgumentTypeError(f"grid must have at least {minimum} points, got {value}")
        return value
    return parse


def parse_arguments(argv: Optional[List[str]] = None, config: Optional[AnalysisConfig] = None) -> argparse.Namespace:
    """
    Разбор аргументов командной строки.

    Args:
        argv: Аргументы (по умолчанию sys.argv)
        config: Конфигурация анализа для значений по умолчанию

    Returns:
        argparse.Namespace: Аргументы командной строки
    """
    config = config or create_default_config()
    parser = argparse.ArgumentParser(
        prog="entwit",
        description="Свидетели многочастичной запутанности: условия A и B, сканы и анализ экспериментов",
    )
    parser.add_argument("--verbose", action="store_true", help="Подробный вывод (DEBUG)")
    commands = parser.add_subparsers(dest="command", required=True)

    state = commands.add_parser("state", help="Записать состояние-заготовку в JSON")
    state.add_argument("--preset", required=True, choices=[p.value for p in StatePreset])
    state.add_argument("--n", type=int, help="Число частиц (обязательно для ghz)")
    state.add_argument("--alpha", type=float, help="Вес α (для w-state)")
    state.add_argument("--out", required=True, help="Путь к файлу состояния")

    expect = commands.add_parser("expect", help="Среднее наблюдаемой в состоянии")
    expect.add_argument("--state", required=True, help="Файл состояния")
    expect.add_argument(
        "--observable", required=True,
        help="Строка Паули (например xyy), 'mermin' или 'klyshko' (нужен --settings)",
    )
    expect.add_argument("--settings", help="Файл настроек для klyshko")

    witness = commands.add_parser("witness", help="Проверка условия A или B")
    witness.add_argument("kind", choices=["a", "b"])
    witness.add_argument("--state", help="Файл состояния")
    witness.add_argument("--settings", help="Файл настроек (условие A)")
    witness.add_argument("--optimize", action="store_true", help="Подобрать настройки (условие A)")
    witness.add_argument("--plane", choices=PLANES, default="xy", help="Плоскость для --optimize")
    witness.add_argument("--data", type=float, help="Измеренное значение |E(F_N)| (условие A)")
    witness.add_argument("--sigma", type=float, default=0.0, help="Погрешность --data")
    witness.add_argument("--n", type=int, default=3, help="Число частиц для --data")
    witness.add_argument("--target", default="ghz", help="Целевое состояние: ghz, psi-b или метка вида uud-")
    witness.add_argument("--json", help="Путь для JSON-отчёта")

    scan = commands.add_parser("scan", help="φ-скан наблюдаемой и его гармоники")
    source = scan.add_mutually_exclusive_group(required=True)
    source.add_argument("--state", help="Файл состояния")
    source.add_argument("--input", help="Готовый скан в CSV (phi,value)")
    scan.add_argument("--observable", choices=[o.value for o in ScanObservable], default="sackett-plus")
    scan.add_argument(
        "--grid", type=_grid_points(config.scan.min_grid_points), default=config.scan.grid_points,
        help=f"Число точек сетки (не меньше {config.scan.min_grid_points})",
    )
    scan.add_argument("--out", help="CSV для скана")

    analyze = commands.add_parser("analyze", help="Анализ эксперимента")
    analyze.add_argument("experiment", choices=ANALYSES)
    analyze.add_argument("--record", help="Файл записи (по умолчанию встроенная)")
    analyze.add_argument("--p-up", type=float, help="Населённость |↑↑↑⟩ (pan)")
    analyze.add_argument("--p-down", type=float, help="Населённость |↓↓↓⟩ (pan)")
    analyze.add_argument("--p-sigma", type=float, default=0.01, help="Погрешность населённостей (pan)")
    analyze.add_argument("--json", help="Путь для JSON-отчёта")

    reproduce = commands.add_parser("reproduce", help="Пересчитать опубликованные числа")
    reproduce.add_argument("--out", default=DEFAULT_OUTPUT_DIR, help="Директория отчёта")
    reproduce.add_argument("--filter", action="append", help="Группа проверок (можно несколько раз)")

    return parser.parse_args(argv)


def _record(args: argparse.Namespace, name: str):
    slack = args.config.populations.sum_slack
    return load_record_file(args.record, slack) if args.record else load_bundled_record(name, slack)


def cmd_state(args: argparse.Namespace) -> int:
    preset = StatePreset(args.preset)
    if preset is StatePreset.GHZ:
        if args.n is None:
            raise ArgumentError("state --preset ghz requires --n")
        state = ghz(args.n)
    elif preset is StatePreset.W_STATE:
        if args.alpha is None:
            raise ArgumentError("state --preset w-state requires --alpha")
        state = build_w_state(args.alpha)
    else:
        state = {StatePreset.PSI_B: psi_b, StatePreset.EQ5: eq5_state, StatePreset.RHO_MIX: rho_mix}[preset]()

    report = validate_density(state)
    if not report.accepted:
        raise ValidationError.from_errors(report.errors, f"preset {preset.value}")
    path = save_state(state, args.out)
    print(f"{preset.value}: {state.n_parties} parties, {state.kind.value} -> {path}")
    return 0


def cmd_expect(args: argparse.Namespace) -> int:
    state = load_state(args.state)
    name = args.observable.lower()
    if name == "mermin":
        operator = mermin_operator().matrix
    elif name == "klyshko":
        if not args.settings:
            raise ArgumentError("expect --observable klyshko requires --settings")
        operator = klyshko_operator(load_settings(args.settings)).matrix
    else:
        operator = pauli_string(name)
    print(f"<{args.observable}> = {fmt(expectation(state, operator))}")
    return 0


def _witness_a(args: argparse.Namespace):
    if (args.state is None) == (args.data is None):
        raise ArgumentError("witness a: exactly one of --state or --data is required")
    if args.data is not None:
        return condition_a_from_data(MeasuredValue(args.data, args.sigma), args.n)

    state = load_state(args.state)
    if args.optimize:
        plane = None if args.plane == "free" else Plane(args.plane)
        settings, _ = optimize_settings(state, state.n_parties, plane, args.config.optimizer)
    elif args.settings:
        settings = load_settings(args.settings)
    else:
        raise ArgumentError("witness a --state needs --settings or --optimize")
    return condition_a(state, settings)


def cmd_witness(args: argparse.Namespace) -> int:
    if args.kind == "a":
        verdict = _witness_a(args)
        payload = verdict.to_dict()
        lo, partite, top = verdict.thresholds
        print(render_report(f"Condition A, N = {verdict.n_parties}", [
            ("|E(F_N)|", verdict.tested_value, None),
            ("local realism threshold", lo, None),
            ("n-partite threshold", partite, None),
            ("quantum maximum", top, None),
            ("classification", verdict.classification.value, None),
        ]))
        print(verdict.summary())
    else:
        if args.state is None:
            raise ArgumentError("witness b requires --state")
        state = load_state(args.state)
        target = resolve_target(args.target, state.n_parties)
        value = fidelity(state, target)
        met = condition_b(state, target)
        payload = {"target": args.target, "fidelity": value, "threshold": FIDELITY_THRESHOLD, "condition_b_met": met}
        print(f"F = {fmt(value)}; condition B {'met' if met else 'not met'}")

    if args.json:
        write_json(payload, args.json)
    return 0


def cmd_scan(args: argparse.Namespace) -> int:
    observable = ScanObservable(args.observable)
    max_frequency = OBSERVABLE_MAX_FREQUENCY[observable]
    if args.input:
        scan = read_scan_csv(args.input)
    else:
        scan = scan_observable(load_state(args.state), observable, args.grid, max_frequency)
    found = harmonics(scan, max_frequency)

    if args.out:
        write_scan_csv(scan, args.out)
    for frequency in sorted(found):
        if frequency == 0:
            continue
        amplitude, phase = found[frequency]
        print(f"f={frequency} amplitude={fmt(amplitude)} phase={fmt(phase)}")
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    if args.experiment == "pan":
        p_up = MeasuredValue(args.p_up, args.p_sigma) if args.p_up is not None else None
        p_down = MeasuredValue(args.p_down, args.p_sigma) if args.p_down is not None else None
        report = analyze_pan(_record(args, "pan"), p_up, p_down)
        rows = [
            ("mermin value", report.mermin_value, None),
            ("Re rho_18", report.re_offdiag, None),
            ("|Re rho_18|", report.abs_re_offdiag, MeasuredValue(*PAN_OFFDIAG)),
            ("hypothetical fidelity", report.hypothetical.fidelity, PAN_HYPOTHETICAL_FIDELITY),
        ]
        title, summary = "Three-photon experiment", report.verdict.summary()
    elif args.experiment == "rauschenbeutel":
        report = analyze_rauschenbeutel(_record(args, "rauschenbeutel"))
        worst = report.worst_case
        rows = [
            ("naive fidelity", report.naive.fidelity, report.quoted_fidelity),
            ("alpha/2", worst.alpha / 2, MeasuredValue(*WORST_CASE_HALF_FRACTIONS["alpha"])),
            ("beta/2", worst.beta / 2, MeasuredValue(*WORST_CASE_HALF_FRACTIONS["beta"])),
            ("gamma/2", worst.gamma / 2, MeasuredValue(*WORST_CASE_HALF_FRACTIONS["gamma"])),
            ("w", worst.w, MeasuredValue(*WORST_CASE_W)),
            ("2 Re rho_72 >= A - w", worst.corrected_offdiag, MeasuredValue(*WORST_CASE_CORRECTED_OFFDIAG)),
            ("corrected fidelity", worst.corrected_fidelity, MeasuredValue(*WORST_CASE_CORRECTED_FIDELITY)),
        ]
        title = "Atoms in a cavity"
        summary = "condition B unmet" if report.condition_b_unmet else "condition B not excluded"
    elif args.experiment == "bouwmeester":
        report = fit_w_state(targets_from_record(_record(args, "bouwmeester")))
        rows = [("alpha", report.alpha, W_ALPHA)] + [
            (f"residual {name}", residual, None) for name, residual in report.residuals.items()
        ]
        title = "Two-particle counterfeit W"
        summary = f"unmet constraints: {', '.join(report.unmet_constraints) or 'none'}"
    else:
        report = demonstrate_rho_mix()
        rows = [
            ("P2", report.populations[0], RHO_MIX_POPULATION),
            ("P7", report.populations[1], RHO_MIX_POPULATION),
            ("signal amplitude", report.amplitude, RHO_MIX_AMPLITUDE),
            ("procedure fidelity", report.procedure_fidelity, RHO_MIX_PROCEDURE_FIDELITY),
            ("|rho_27|", report.abs_element_27, RHO_MIX_OFFDIAG),
            ("true fidelity", report.phase_matched_fidelity, RHO_MIX_TRUE_FIDELITY),
        ]
        title, summary = "Incoherent mixture", f"fidelity against psi_B: {fmt(report.psi_b_fidelity)}"

    print(render_report(title, rows))
    print(summary)
    if args.json:
        write_json(report.to_dict(), args.json)
    return 0


def cmd_reproduce(args: argparse.Namespace) -> int:
    reproducer = Reproducer(args.config)
    report = reproducer.run(args.filter)
    path = reproducer.write(report, args.out)

    for check in report.checks:
        status = "ok" if check.passed else "FAILED"
        print(f"[{status}] {check.group}/{check.name}: {fmt_quantity(check.computed_value)}")
    print(f"{len(report.checks) - len(report.failed)}/{len(report.checks)} checks passed -> {path}")
    return 0 if report.passed else 1


COMMANDS = {
    "state": cmd_state,
    "expect": cmd_expect,
    "witness": cmd_witness,
    "scan": cmd_scan,
    "analyze": cmd_analyze,
    "reproduce": cmd_reproduce,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Точка входа; возвращает код выхода."""
    config = create_default_config()
    try:
        args = parse_arguments(argv, config)
    except SystemExit as e:
        # argparse уже напечатал сообщение; 2 - ошибка разбора
        return e.code if isinstance(e.code, int) else 2
    args.config = config
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format=LOG_FORMAT)

    try:
        return COMMANDS[args.command](args)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception:
        logger.exception(f"Command '{args.command}' failed")
        return 1


if __name__ == "__main__":
    sys.exit(main())
