import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from src.commands.files import read_matrix_spec, read_vector, write_vector
from src.middleware.command_logging import log_command
from src.models.matrices import CirculantSpec, HankelSpec
from src.models.register import ApplyResult
from src.services.pipeline_service import pipeline_service

logger = logging.getLogger(__name__)

_FILE = click.Path(exists=True, dir_okay=False)


def run_apply(spec, psi, mode="exact", shots=None, seed=None, fast=None) -> ApplyResult:
    """Dispatch on the matrix kind, then optionally sample the ancilla measurement."""
    if isinstance(spec, HankelSpec):
        result = pipeline_service.apply_hankel(spec, psi, fast=fast)
    elif isinstance(spec, CirculantSpec):
        result = pipeline_service.apply_circulant(spec, psi, fast=fast)
    else:
        result = pipeline_service.apply_toeplitz(spec, psi, fast=fast)

    if mode == "sample":
        config = pipeline_service.config
        result = pipeline_service.sample_measurement(
            result,
            shots if shots is not None else config.DEFAULT_SHOTS,
            seed if seed is not None else config.DEFAULT_SEED,
        )
    return result


def format_apply_report(result: ApplyResult) -> str:
    convention = "max|lambda|" if result.scale_convention == "max-modulus" else "sqrt(max|lambda|)"
    lines = [
        f"method: {result.method}",
        f"dimension: {result.output.size}",
        f"k: {result.k:.6f} (k = {convention})",
        f"input norm: {result.input_norm:.6f}",
        f"success probability: {result.success_probability:.6f}",
        f"expected repeats: {result.expected_repeats:.6f}",
        "global phase: -i (divided out of the output vector)",
    ]
    if result.shots is not None:
        record = result.shots
        lines.append(
            f"shots: {record.shots} successes: {record.successes} frequency: {record.frequency:.6f}"
        )
        lines.append(
            f"mean attempts per success: {record.mean_attempts_per_success:.6f} "
            f"longest failure run: {record.longest_failure_run}"
        )
        counts = " ".join(f"{label}={count}" for label, count in record.outcome_counts.items())
        lines.append(f"outcomes: {counts}")
    return "\n".join(lines)


@click.command("apply")
@click.option("--matrix", required=True, type=_FILE, help="Matrix spec JSON file.")
@click.option("--vector", required=True, type=_FILE, help="Input vector file.")
@click.option("--out", type=click.Path(dir_okay=False), help="Where to write the output vector.")
@click.option("--mode", type=click.Choice(["exact", "sample"]), default="exact", show_default=True)
@click.option("--shots", type=click.IntRange(min=1), help="Shots in sample mode.")
@click.option("--seed", type=int, help="Seed for sample mode.")
@click.option("--fast/--register", "fast", default=None,
              help="Force the structured FFT path or the full register simulation.")
@log_command("apply")
def apply_command(matrix, vector, out, mode, shots, seed, fast):
    """Apply a Toeplitz, Hankel or circulant matrix to a vector."""
    spec = read_matrix_spec(matrix)
    psi = read_vector(vector)
    result = run_apply(spec, psi, mode, shots, seed, fast)
    if out:
        write_vector(result.output, out)
    click.echo(format_apply_report(result))


@click.command("batch")
@click.option("--matrix", required=True, type=_FILE, help="Matrix spec JSON file.")
@click.option("--out-dir", required=True, type=click.Path(file_okay=False), help="Directory for output vectors.")
@click.option("--jobs", type=click.IntRange(min=1), help="Concurrent workers.")
@click.option("--fast/--register", "fast", default=None)
@click.argument("vectors", nargs=-1, required=True, type=_FILE)
@log_command("batch")
def batch_command(matrix, out_dir, jobs, fast, vectors):
    """Apply one matrix to several vector files concurrently."""
    spec = read_matrix_spec(matrix)
    inputs = [read_vector(path) for path in vectors]
    workers = jobs or pipeline_service.config.BATCH_WORKERS

    with ThreadPoolExecutor(max_workers=workers) as executor:
        results = list(executor.map(lambda psi: run_apply(spec, psi, fast=fast), inputs))

    target = Path(out_dir)
    target.mkdir(parents=True, exist_ok=True)
    for path, result in zip(vectors, results):
        destination = target / f"{Path(path).stem}.out.txt"
        write_vector(result.output, destination)
        click.echo(f"{path}: p={result.success_probability:.6f} k={result.k:.6f} -> {destination}")
