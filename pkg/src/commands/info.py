import click

from src.commands.files import read_matrix_spec, read_vector
from src.middleware.command_logging import log_command
from src.services.report_service import report_service


def format_info(info: dict) -> str:
    lines = [f"kind: {info['kind']}", f"dimension: {info['dimension']}"]
    sparsity = info["sparsity"]
    lines.append(f"nnz_time: {sparsity['nnz_time']}")
    lines.append(f"nnz_freq: {sparsity['nnz_freq']} (tau = {sparsity['threshold']:.3e})")

    spectrum = info.get("spectrum")
    if spectrum is None:
        lines.append("spectrum: zero matrix")
        return "\n".join(lines)
    lines.append(f"spectrum max |lambda|: {spectrum['max_modulus']:.6g} (index {spectrum['argmax']})")
    lines.append(f"spectrum min |lambda|: {spectrum['min_modulus']:.6g} (index {spectrum['argmin']})")

    resources = info["resources"]
    lines.append(f"k: {resources['k']:.6g}")
    lines.append(f"qubits: {resources['qubits']}")
    lines.append(f"qft gate estimate: {resources['qft_gate_estimate']} x {resources['qft_count']}")
    if "qft_swaps" in resources:
        lines.append(
            f"qft breakdown: {resources['qft_hadamards']} H, "
            f"{resources['qft_controlled_phases']} CP, {resources['qft_swaps']} SWAP"
        )
    if resources.get("success_probability") is not None:
        lines.append(f"success probability: {resources['success_probability']:.6f}")
        lines.append(f"expected repeats: {resources['expected_repeats']:.6f}")
    return "\n".join(lines)


@click.command("info")
@click.option("--matrix", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--vector", type=click.Path(exists=True, dir_okay=False), help="Optional input vector.")
@click.option("--tau", type=click.FloatRange(min=0), help="Absolute frequency threshold.")
@log_command("info")
def info_command(matrix, vector, tau):
    """Print sparsity, spectrum and resource estimates for a matrix spec."""
    spec = read_matrix_spec(matrix)
    psi = read_vector(vector) if vector else None
    click.echo(format_info(report_service.info(spec, psi, tau)))
