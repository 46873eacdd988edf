import click

from src.commands.files import read_matrix_spec, write_dense_matrix
from src.exceptions import OracleCapExceededError, SpecParseError
from src.middleware.command_logging import log_command
from src.models.dilation import HermitianEmbedding
from src.models.matrices import CirculantSpec, HankelSpec
from src.services.dilation import build_dilation, materialize_dilation, materialize_embedding
from src.services.pipeline_service import pipeline_service
from src.services.structured_matrices import (
    circulant_eigenvalues,
    embed_in_circulant,
    hankel_to_toeplitz,
    materialize_dense,
)


def dense_embedding(spec, what: str, cap: int):
    """Dense C_T, U(Lambda) or H(U) for a Toeplitz/Hankel spec (C itself for a circulant).

    ``cap`` bounds the input dimension n; the dump itself is 2n, 4n or 8n wide.
    """
    n = spec.m if isinstance(spec, CirculantSpec) else spec.n
    if n > cap:
        raise OracleCapExceededError(n, cap)
    if isinstance(spec, CirculantSpec):
        circulant = spec
    else:
        toeplitz = hankel_to_toeplitz(spec) if isinstance(spec, HankelSpec) else spec
        circulant = embed_in_circulant(toeplitz)
    if what == "circulant":
        return materialize_dense(circulant, cap=circulant.m)

    dilation = build_dilation(circulant_eigenvalues(circulant),
                              literal_scale=pipeline_service.config.LITERAL_SCALE)
    if what == "dilation":
        return materialize_dilation(dilation, cap=dilation.dim)
    if what == "embedding":
        embedding = HermitianEmbedding(dilation)
        return materialize_embedding(embedding, cap=embedding.dim)
    raise SpecParseError(f"unknown embedding '{what}'")


@click.command("embed")
@click.option("--matrix", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--what", type=click.Choice(["circulant", "dilation", "embedding"]), default="circulant",
              show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--cap", type=click.IntRange(min=1), help="Largest input dimension n to dump.")
@log_command("embed")
def embed_command(matrix, what, out, cap):
    """Dump the dense circulant embedding, unitary dilation or Hermitian embedding."""
    spec = read_matrix_spec(matrix)
    cap = cap or pipeline_service.config.ORACLE_CAP
    dense = dense_embedding(spec, what, cap)
    write_dense_matrix(dense, out)
    click.echo(f"{what}: {dense.shape[0]} x {dense.shape[1]} written to {out}")
