#!/usr/bin/env python3
"""Command-line entry point: enumerations, certificate checks and eigenvalue queries."""
from __future__ import annotations

import argparse
import json
import logging
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from dotenv import load_dotenv

from exact_linalg import LinalgError
from enum_maverick import MaverickCatalog, enumerate_mavericks, read_maverick_catalog, write_maverick_catalog
from enum_rooted import (
    RootedCatalog,
    ape_family,
    check_general_subgraph_closure,
    degree_and_distance_bounds,
    ell0_violations,
    enumerate_rooted,
    match_published_maximal,
    read_rooted_catalog,
    write_rooted_catalog,
)
from generalized_line import write_forbidden_corpus
from graphs import CorpusError, GraphError, e_graph, parse_edges, read_corpus
from parallel import DEFAULT_JOBS
from spectral import (
    CONSTANTS,
    GateResult,
    InconclusiveError,
    UndecidableError,
    gate_lambda_star,
    is_psd_at_two,
    lambda1_interval,
    lambda_prime_check,
)
from twisted import (
    VerificationError,
    ape_overlap,
    check_large_structure,
    filter_twisted,
    non_twisted_claw_leaves,
    write_twisted_catalog,
)
from certificates import (
    a_list,
    limit_coefficient_holds,
    check_b_list,
    g_list,
    load_graph_corpus,
    load_rooted_corpus,
    verify_forbidden_rooted,
    verify_path_extension_limits,
)

load_dotenv(override=True)

ROOT = Path(__file__).resolve().parents[2]
DATA_DIR = Path(os.getenv("LAMBDASTAR_DATA_DIR") or ROOT / "data")
CORPUS_DIR = DATA_DIR / "corpus"
CATALOG_DIR = DATA_DIR / "catalogs"
RUNS_DIR = DATA_DIR / "runs"
LOGS_DIR = DATA_DIR / "logs"
CHECKPOINT_DIR = DATA_DIR / "checkpoints"
LOG_LEVEL = os.getenv("LAMBDASTAR_LOG_LEVEL", "INFO").upper()

FORBIDDEN_CORPUS = CORPUS_DIR / "forbidden_rooted.txt"
PATH_EXTENSION_CORPUS = CORPUS_DIR / "path_extension.txt"
GLG_CORPUS = CORPUS_DIR / "glg_forbidden.txt"
MAXIMAL_CORPUS = CORPUS_DIR / "maximal_rooted.txt"

LOGGER = logging.getLogger("lambdastar")

COMMANDS = (
    "enum-rooted",
    "enum-maverick",
    "enum-twisted",
    "verify-forbidden",
    "verify-limits",
    "lambda1",
    "selfcheck",
    "corpus",
)
COMMAND_ALIASES = {"verify-appendix": "verify-limits"}

# published tables
ROOTED_HISTOGRAM = {0: 1, 2: 1, 3: 2, 4: 6, 5: 14, 6: 42, 7: 107, 8: 190, 9: 194, 10: 136, 11: 68, 12: 27, 13: 4, 14: 2}
ROOTED_MAXIMAL = 48
MAVERICK_HISTOGRAM = {9: 13, 10: 629, 11: 1304, 12: 1237, 13: 775, 14: 408, 15: 221, 16: 107, 17: 42, 18: 13, 19: 3}
TWISTED_HISTOGRAM = {10: 48, 11: 133, 12: 220, 13: 236, 14: 210, 15: 162, 16: 96, 17: 40, 18: 13, 19: 3}

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_ARITHMETIC = 3


def utcnow() -> datetime:
    return datetime.now(timezone.utc)


def setup_logging(run_id: str) -> Path:
    LOGS_DIR.mkdir(parents=True, exist_ok=True)
    log_path = LOGS_DIR / f"{run_id}.log"
    for handler in list(LOGGER.handlers):
        LOGGER.removeHandler(handler)
        handler.close()
    LOGGER.setLevel(getattr(logging, LOG_LEVEL, logging.INFO))
    formatter = logging.Formatter(
        "%(asctime)s | %(levelname)s | %(processName)s | %(message)s", "%Y-%m-%d %H:%M:%S"
    )

    file_handler = logging.FileHandler(log_path, encoding="utf-8")
    file_handler.setFormatter(formatter)
    LOGGER.addHandler(file_handler)

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    LOGGER.addHandler(console_handler)

    return log_path


@dataclass
class RunConfig:
    command: str
    jobs: int = DEFAULT_JOBS
    fmt: str = "text"
    out: Optional[Path] = None
    corpus: Optional[Path] = None
    tol: float = 1e-9
    expect_published: bool = False
    checkpoint_dir: Optional[Path] = None
    resume: bool = False
    mavericks: Optional[Path] = None
    rooted: Optional[Path] = None
    graph: Optional[str] = None
    order: Optional[int] = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"Comando desconocido: {self.command}")
        if self.jobs < 1:
            raise ValueError("--jobs debe ser al menos 1.")
        if self.tol <= 0:
            raise ValueError("--tol debe ser mayor a 0.")
        if self.fmt not in ("text", "json"):
            raise ValueError("--format debe ser text o json.")
        if self.command == "lambda1" and self.graph is None:
            raise ValueError("lambda1 necesita una cadena de aristas.")


@dataclass
class RunResult:
    exit_code: int = EXIT_OK
    counts: Dict[str, object] = field(default_factory=dict)
    histogram: Dict[str, int] = field(default_factory=dict)
    output: Optional[Path] = None
    lines: List[str] = field(default_factory=list)
    rows: List[Dict[str, object]] = field(default_factory=list)

    def fail(self, message: str) -> None:
        self.exit_code = EXIT_MISMATCH
        self.lines.append(f"[ERROR] {message}")


def _out_path(config: RunConfig, name: str) -> Path:
    if config.out is not None:
        return config.out
    return CATALOG_DIR / f"{name}.{'json' if config.fmt == 'json' else 'txt'}"


def _compare_histogram(result: RunResult, label: str, got: Dict[int, int], want: Dict[int, int]) -> None:
    if got == want:
        result.lines.append(f"[OK] Histograma {label} coincide con la tabla publicada")
    else:
        result.fail(f"Histograma {label} distinto: {got} != {want}")


# Commands --------------------------------------------------------------------------
def cmd_enum_rooted(config: RunConfig) -> RunResult:
    result = RunResult()
    catalog = enumerate_rooted(config.jobs)
    result.output = _out_path(config, "rooted")
    write_rooted_catalog(result.output, catalog, config.fmt)
    histogram = catalog.histogram()
    max_degree, max_distance = degree_and_distance_bounds(catalog)
    result.histogram = {str(k): v for k, v in histogram.items()}
    result.counts = {
        "members": len(catalog),
        "maximal": len(catalog.maximal()),
        "max_degree": max_degree,
        "max_root_distance": max_distance,
    }
    result.lines.append(f"[INFO] {len(catalog)} miembros, {len(catalog.maximal())} maximales")
    if config.expect_published:
        _compare_histogram(result, "enraizado", histogram, ROOTED_HISTOGRAM)
        if len(catalog.maximal()) != ROOTED_MAXIMAL:
            result.fail(f"{len(catalog.maximal())} maximales; se esperaban {ROOTED_MAXIMAL}")
        if any(e.ell0 is None or not 0 <= e.ell0 <= 6 for e in catalog.entries):
            result.fail("Algún ell0 fuera de 0..6")
        late = ell0_violations(catalog)
        if late:
            result.fail(f"{len(late)} miembros siguen PSD en -2 después de ell0")
        if max_degree > 7 or max_distance > 8:
            result.fail(f"Cotas violadas: grado {max_degree}, distancia {max_distance}")
        published = [
            parse_edges(entry.edges, rooted=True) for entry in read_corpus(config.corpus or MAXIMAL_CORPUS)
        ]
        if match_published_maximal(catalog, published):  # type: ignore[arg-type]
            result.lines.append("[OK] Los maximales coinciden con la lista publicada")
        else:
            result.fail("Los maximales no coinciden con la lista publicada")
        if not check_general_subgraph_closure(catalog):
            result.fail("El catálogo no es cerrado bajo subgrafos generales")
    return result


def cmd_enum_maverick(config: RunConfig) -> RunResult:
    result = RunResult()
    checkpoint_dir = config.checkpoint_dir or (CHECKPOINT_DIR if config.resume else None)
    catalog = enumerate_mavericks(config.jobs, checkpoint_dir, config.resume)
    result.output = _out_path(config, "mavericks")
    write_maverick_catalog(result.output, catalog, config.fmt)
    histogram = catalog.histogram()
    result.histogram = {str(k): v for k, v in histogram.items()}
    result.counts = {"mavericks": len(catalog)}
    result.lines.append(f"[INFO] {len(catalog)} mavericks")
    if config.expect_published:
        _compare_histogram(result, "maverick", histogram, MAVERICK_HISTOGRAM)
    return result


def _load_mavericks(config: RunConfig) -> MaverickCatalog:
    if config.mavericks is not None:
        if not config.mavericks.exists():
            raise CorpusError(f"No existe {config.mavericks}")
        return read_maverick_catalog(config.mavericks)
    LOGGER.info("Sin --mavericks; se enumeran de nuevo")
    return enumerate_mavericks(config.jobs)


def _load_rooted(config: RunConfig) -> RootedCatalog:
    if config.rooted is not None:
        if not config.rooted.exists():
            raise CorpusError(f"No existe {config.rooted}")
        return read_rooted_catalog(config.rooted)
    LOGGER.info("Sin --rooted; se enumera el catálogo enraizado")
    return enumerate_rooted(config.jobs, annotate=False)


def cmd_enum_twisted(config: RunConfig) -> RunResult:
    result = RunResult()
    mavericks = _load_mavericks(config)
    twisted = filter_twisted(mavericks, config.jobs)
    result.output = _out_path(config, "twisted")
    write_twisted_catalog(result.output, twisted, config.fmt)
    histogram = twisted.histogram()
    claw_cases = non_twisted_claw_leaves(mavericks, twisted)
    result.histogram = {str(k): v for k, v in histogram.items()}
    result.counts = {"twisted": len(twisted), "non_twisted_order17": len(claw_cases)}
    result.lines.append(f"[INFO] {len(twisted)} mavericks torcidos")
    if config.expect_published:
        _compare_histogram(result, "torcido", histogram, TWISTED_HISTOGRAM)
        ape_graphs = ape_family(_load_rooted(config))
        large = check_large_structure([*mavericks.graphs, *ape_graphs])
        overlap = ape_overlap(mavericks.graphs, ape_graphs)
        result.counts.update(
            {
                "ape_graphs": len(ape_graphs),
                "large_structure_violations": len(large),
                "ape_maverick_overlap": len(overlap),
            }
        )
        if large:
            result.fail(f"{len(large)} grafos grandes sin hoja única hacia L(bipartito)")
        if overlap:
            result.fail(f"{len(overlap)} extensiones APE son isomorfas a mavericks")
        if len(claw_cases) != 2 or any(len(leaves) != 1 for _, leaves in claw_cases):
            result.fail("Los no torcidos de orden 17 no tienen una única hoja con garra inducida")
    return result


def cmd_verify_forbidden(config: RunConfig) -> RunResult:
    result = RunResult()
    report = verify_forbidden_rooted(load_rooted_corpus(config.corpus or FORBIDDEN_CORPUS))
    result.counts = {label: str(value) for label, value in report.rows}
    for label, value in report.rows:
        tag = "[OK]" if value < 0 else "[ERROR]"
        result.rows.append({"label": label, "det": str(value), "negative": value < 0})
        result.lines.append(f"{tag} {label}: det = {value} ~ {float(value):.6g}")
    if not report.passed:
        result.fail("Algún determinante en 101/50 no es negativo")
    return result


def cmd_verify_limits(config: RunConfig) -> RunResult:
    result = RunResult()
    a_graphs = a_list()
    b_graphs = load_graph_corpus(PATH_EXTENSION_CORPUS)
    g_path = config.corpus or GLG_CORPUS
    g_graphs = g_list(g_path)
    bad_b = check_b_list([g for g in b_graphs if g.label.startswith("B")])
    if len(a_graphs) != 39:
        result.fail(f"La lista A tiene {len(a_graphs)} grafos; se esperaban 39")
    if bad_b:
        result.fail(f"Transcripción inválida en {bad_b}")
    if not limit_coefficient_holds():
        result.fail("El coeficiente 6/7 no queda certificado")
    report = verify_path_extension_limits([*a_graphs, *b_graphs, *g_graphs])
    result.counts = {
        "a_list": len(a_graphs),
        "b_list": len(b_graphs),
        "g_list": len(g_graphs),
        "checked": report.checked,
        "collected": len(report.collected),
        "unexpected": len(report.unexpected),
    }
    for label, roots, value in report.collected:
        result.rows.append({"label": label, "roots": list(roots), "det": str(value)})
        result.lines.append(f"[INFO] {label} R={list(roots)} det={value}")
    if report.passed:
        result.lines.append("[OK] Solo E6, E7 y E6' enraizado quedan con determinante no negativo")
    else:
        result.fail(f"Pares inesperados: {report.unexpected}")
    return result


def cmd_lambda1(config: RunConfig) -> RunResult:
    result = RunResult()
    graph = parse_edges(config.graph or "", order=config.order, rooted=False)
    lo, hi = lambda1_interval(graph, config.tol)  # type: ignore[arg-type]
    result.counts = {"lo": float(lo), "hi": float(hi), "lo_exact": str(lo), "hi_exact": str(hi)}
    result.lines.append(f"[INFO] lambda1 en [{float(lo):.12f}, {float(hi):.12f}]")
    return result


def cmd_selfcheck(config: RunConfig) -> RunResult:
    result = RunResult()
    checks: Dict[str, bool] = {}
    try:
        CONSTANTS.sanity()
        checks["constants"] = True
    except AssertionError:
        checks["constants"] = False
    checks["limit_coefficient"] = limit_coefficient_holds()
    checks["forbidden_rooted"] = verify_forbidden_rooted(load_rooted_corpus(FORBIDDEN_CORPUS)).passed
    e10 = e_graph(10)
    checks["e10"] = gate_lambda_star(e10) is GateResult.ABOVE and not is_psd_at_two(e10)
    checks["e9"] = is_psd_at_two(e_graph(9))
    checks["lambda_prime"] = lambda_prime_check()
    a_graphs = a_list()
    b_graphs = load_graph_corpus(PATH_EXTENSION_CORPUS)
    checks["a_list"] = len(a_graphs) == 39
    checks["b_list"] = not check_b_list([g for g in b_graphs if g.label.startswith("B")])
    checks["path_extension_limits"] = verify_path_extension_limits([*a_graphs, *b_graphs]).passed
    for name, ok in checks.items():
        result.lines.append(f"{'[OK]' if ok else '[ERROR]'} {name}")
    result.counts = {name: ok for name, ok in checks.items()}
    if not all(checks.values()):
        result.exit_code = EXIT_MISMATCH
    return result


def cmd_corpus(config: RunConfig) -> RunResult:
    result = RunResult()
    result.output = config.out or GLG_CORPUS
    entries = write_forbidden_corpus(result.output)
    result.counts = {"forbidden": len(entries)}
    result.lines.append(f"[INFO] {len(entries)} subgrafos prohibidos escritos en {result.output}")
    if config.expect_published and len(entries) != 31:
        result.fail(f"Se esperaban 31 subgrafos prohibidos, hay {len(entries)}")
    return result


HANDLERS = {
    "enum-rooted": cmd_enum_rooted,
    "enum-maverick": cmd_enum_maverick,
    "enum-twisted": cmd_enum_twisted,
    "verify-forbidden": cmd_verify_forbidden,
    "verify-limits": cmd_verify_limits,
    "lambda1": cmd_lambda1,
    "selfcheck": cmd_selfcheck,
    "corpus": cmd_corpus,
}


def summarize(run_id: str, config: RunConfig, started_at: datetime, result: RunResult, log_path: Path) -> Path:
    RUNS_DIR.mkdir(parents=True, exist_ok=True)
    ended_at = utcnow()
    summary = {
        "run_id": run_id,
        "command": config.command,
        "started_at": started_at.isoformat(),
        "ended_at": ended_at.isoformat(),
        "duration_seconds": round((ended_at - started_at).total_seconds(), 2),
        "jobs": config.jobs,
        "expect_published": config.expect_published,
        "exit_code": result.exit_code,
        "passed": result.exit_code == EXIT_OK,
        "counts": result.counts,
        "histogram": result.histogram,
        "output": str(result.output) if result.output else None,
        "log_file": str(log_path),
    }
    report_path = RUNS_DIR / f"{run_id}.json"
    report_path.write_text(json.dumps(summary, ensure_ascii=False, indent=2), encoding="utf-8")
    latest_path = RUNS_DIR / "latest.json"
    latest_path.write_text(json.dumps(summary, ensure_ascii=False, indent=2), encoding="utf-8")
    return report_path


def _emit(config: RunConfig, result: RunResult) -> None:
    if config.fmt == "json":
        payload = {
            "command": config.command,
            "exit_code": result.exit_code,
            "counts": result.counts,
            "histogram": result.histogram,
            "rows": result.rows,
            "messages": result.lines,
            "output": str(result.output) if result.output else None,
        }
        print(json.dumps(payload, ensure_ascii=False, indent=2))
        return
    for line in result.lines:
        print(line)


def run(config: RunConfig) -> int:
    config.validate()
    started_at = utcnow()
    run_id = started_at.strftime(f"{config.command}-%Y%m%d-%H%M%S")
    log_path = setup_logging(run_id)
    LOGGER.info("Ejecutando %s con %d procesos", config.command, config.jobs)
    try:
        result = HANDLERS[config.command](config)
    except (UndecidableError, InconclusiveError) as exc:
        LOGGER.error("Fallo aritmético: %s", exc)
        result = RunResult(exit_code=EXIT_ARITHMETIC, lines=[f"[ERROR] {exc}"])
    except VerificationError as exc:
        LOGGER.error("Verificación fallida: %s", exc)
        result = RunResult(exit_code=EXIT_MISMATCH, lines=[f"[ERROR] {exc}"])
    except (CorpusError, GraphError, LinalgError) as exc:
        LOGGER.error("Entrada inválida: %s", exc)
        result = RunResult(exit_code=EXIT_USAGE, lines=[f"[ERROR] {exc}"])
    _emit(config, result)
    summarize(run_id, config, started_at, result, log_path)
    LOGGER.info("Terminado %s con código %d", config.command, result.exit_code)
    return result.exit_code


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    parser = argparse.ArgumentParser(
        description="Clasificación exacta de grafos con menor valor propio en (-lambda*, -2)."
    )
    parser.add_argument("command", choices=(*COMMANDS, *COMMAND_ALIASES), help="Operación a ejecutar.")
    parser.add_argument("graph", nargs="?", help="Cadena de aristas (solo lambda1).")
    parser.add_argument("--jobs", type=int, default=DEFAULT_JOBS, help="Procesos en paralelo.")
    parser.add_argument("--format", dest="fmt", choices=("text", "json"), default="text", help="Formato de salida.")
    parser.add_argument("--out", type=Path, help="Archivo de salida del catálogo.")
    parser.add_argument("--corpus", type=Path, help="Corpus alternativo para verify-* o enum-rooted.")
    parser.add_argument("--tol", type=float, default=1e-9, help="Ancho del intervalo en lambda1.")
    parser.add_argument("--order", type=int, help="Orden del grafo en lambda1 si hay vértices aislados.")
    parser.add_argument(
        "--expect-published",
        "--expect-paper",
        dest="expect_published",
        action="store_true",
        help="Compara los conteos con las tablas publicadas; sale con 1 si difieren.",
    )
    parser.add_argument("--checkpoint-dir", type=Path, help="Directorio de checkpoints por nivel.")
    parser.add_argument("--resume", action="store_true", help="Reanuda enum-maverick desde el último nivel.")
    parser.add_argument("--mavericks", type=Path, help="Catálogo de mavericks ya calculado (enum-twisted).")
    parser.add_argument("--rooted", type=Path, help="Catálogo enraizado ya calculado (enum-twisted --expect-published).")
    args = parser.parse_args(argv)
    config = RunConfig(
        command=COMMAND_ALIASES.get(args.command, args.command),
        jobs=args.jobs,
        fmt=args.fmt,
        out=args.out,
        corpus=args.corpus,
        tol=args.tol,
        expect_published=args.expect_published,
        checkpoint_dir=args.checkpoint_dir,
        resume=args.resume,
        mavericks=args.mavericks,
        rooted=args.rooted,
        graph=args.graph,
        order=args.order,
    )
    try:
        config.validate()
    except ValueError as exc:
        parser.error(str(exc))
    return config


def main(argv: Optional[Sequence[str]] = None) -> None:
    raise SystemExit(run(parse_args(argv)))


if __name__ == "__main__":
    main()


# Instrucciones de uso:
# 1. pip install -r requirements.txt (pruebas: requirements-dev.txt)
# 2. python scripts/lambdastar/cli.py selfcheck
# 3. python scripts/lambdastar/cli.py enum-rooted --expect-published --jobs 8
# 4. python scripts/lambdastar/cli.py enum-maverick --expect-published --jobs 8 --checkpoint-dir data/checkpoints
# 5. python scripts/lambdastar/cli.py enum-twisted --mavericks data/catalogs/mavericks.txt --rooted data/catalogs/rooted.txt --expect-published
# 6. python scripts/lambdastar/report_last_run.py
