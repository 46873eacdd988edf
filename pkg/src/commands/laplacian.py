import click

from src.commands.files import read_vector, write_matrix_spec, write_vector
from src.exceptions import DimensionMismatchError
from src.middleware.command_logging import log_command
from src.services.pipeline_service import pipeline_service
from src.services.structured_matrices import build_laplacian


@click.command("laplacian")
@click.option("--n", "n", required=True, type=click.IntRange(min=2), help="Number of interior sectors.")
@click.option("--h", "h", required=True, type=click.FloatRange(min=0, min_open=True), help="Sector spacing.")
@click.option("--vector", required=True, type=click.Path(exists=True, dir_okay=False), help="Displacements u.")
@click.option("--out", type=click.Path(dir_okay=False), help="Where to write the accelerations.")
@click.option("--spec-out", type=click.Path(dir_okay=False), help="Also write the L2 matrix spec here.")
@click.option("--fast/--register", "fast", default=None)
@log_command("laplacian")
def laplacian_command(n, h, vector, out, spec_out, fast):
    """Accelerations -(1/h^2) L2 u of a fixed-end sector chain."""
    u = read_vector(vector)
    if u.size != n:
        raise DimensionMismatchError(f"--n is {n} but the displacement vector has {u.size} entries")
    acceleration = pipeline_service.acceleration(u, h, fast=fast)
    if out:
        write_vector(acceleration, out)
    if spec_out:
        write_matrix_spec(build_laplacian(n), spec_out)
    click.echo(f"sectors: {n}")
    click.echo(f"spacing h: {h:.6g}")
    click.echo(f"max |acceleration|: {float(abs(acceleration).max()):.6g}")
