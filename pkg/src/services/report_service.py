import logging
import math
from typing import Dict, Optional, Union

import numpy as np

from config import get_config
from src.exceptions import DimensionMismatchError
from src.models.matrices import CirculantSpec, HankelSpec, ToeplitzSpec
from src.models.register import ResourceReport
from src.services.dilation import scale_factor
from src.services.pipeline_service import PipelineService, pipeline_service
from src.services.structured_matrices import (
    array_sparsity,
    circulant_eigenvalues,
    embed_in_circulant,
    hankel_to_toeplitz,
    sparsity_report,
)

logger = logging.getLogger(__name__)


class ReportService:
    """
    Builds the spectral, sparsity and resource summaries printed by the CLI.
    """

    def __init__(self, pipeline: Optional[PipelineService] = None, config=None):
        self.config = config or get_config()
        self.pipeline = pipeline or pipeline_service

    @staticmethod
    def qft_gate_counts(size: int) -> Dict[str, int]:
        """Textbook QFT on ceil(log2 size) qubits: one H per qubit, a controlled
        phase per qubit pair and a final swap ladder."""
        qubits = max(1, math.ceil(math.log2(size)))
        return {
            "qubits": qubits,
            "hadamards": qubits,
            "controlled_phases": qubits * (qubits - 1) // 2,
            "swaps": qubits // 2,
        }

    def resource_report(self, spec: ToeplitzSpec, psi=None) -> ResourceReport:
        """Qubits, QFT gate estimates, k and (optionally) the exact success probability."""
        lambdas = circulant_eigenvalues(embed_in_circulant(spec))
        literal = self.config.LITERAL_SCALE
        k = scale_factor(lambdas, literal=literal)
        qft = self.qft_gate_counts(2 * spec.n)

        probability = None
        if psi is not None:
            probability = self.pipeline.run_pipeline_fast(spec, psi).success_probability

        return ResourceReport(
            n=spec.n,
            qubits=math.ceil(math.log2(8 * spec.n)),
            qft_size=2 * spec.n,
            qft_qubits=qft["qubits"],
            qft_hadamards=qft["hadamards"],
            qft_controlled_phases=qft["controlled_phases"],
            qft_swaps=qft["swaps"],
            qft_count=2,
            k=k,
            scale_convention="sqrt-max-modulus" if literal else "max-modulus",
            success_probability=probability,
        )

    @staticmethod
    def spectrum_summary(lambdas) -> Dict[str, float]:
        moduli = np.abs(lambdas)
        smallest = float(np.min(moduli))
        largest = float(np.max(moduli))
        return {
            "min_modulus": smallest,
            "max_modulus": largest,
            "argmin": int(np.argmin(moduli)) + 1,
            "argmax": int(np.argmax(moduli)) + 1,
            "condition": largest / smallest if smallest > 0 else math.inf,
        }

    def info(self, spec: Union[ToeplitzSpec, HankelSpec, CirculantSpec], psi=None,
             threshold: Optional[float] = None) -> Dict:
        """Everything ``info`` prints, as a dictionary."""
        if isinstance(spec, CirculantSpec):
            return self._circulant_info(spec, psi, threshold)

        toeplitz = hankel_to_toeplitz(spec) if isinstance(spec, HankelSpec) else spec
        if psi is not None and np.asarray(psi).size != toeplitz.n:
            raise DimensionMismatchError(
                f"matrix has dimension {toeplitz.n}, vector has length {np.asarray(psi).size}"
            )
        sparsity = sparsity_report(toeplitz, threshold)
        info = {
            "kind": "hankel" if isinstance(spec, HankelSpec) else "toeplitz",
            "dimension": toeplitz.n,
            "sparsity": sparsity.to_dict(),
        }
        if toeplitz.is_zero:
            logger.warning(f"{spec!r} is identically zero; no spectrum or resources to report")
            return info

        if isinstance(spec, HankelSpec) and psi is not None:
            psi = np.asarray(psi, dtype=np.complex128)[::-1]
        info["spectrum"] = self.spectrum_summary(circulant_eigenvalues(embed_in_circulant(toeplitz)))
        info["resources"] = self.resource_report(toeplitz, psi).to_dict()
        return info

    def _circulant_info(self, spec: CirculantSpec, psi, threshold) -> Dict:
        sparsity = array_sparsity(spec.first_row, threshold)
        info = {
            "kind": "circulant",
            "dimension": spec.m,
            "sparsity": {
                "nnz_time": sparsity.nnz_time,
                "nnz_freq": sparsity.nnz_freq,
                "threshold": sparsity.threshold,
            },
        }
        if not np.any(spec.first_row):
            return info

        lambdas = circulant_eigenvalues(spec)
        info["spectrum"] = self.spectrum_summary(lambdas)
        qft = self.qft_gate_counts(spec.m)
        info["resources"] = {
            "qubits": math.ceil(math.log2(4 * spec.m)),
            "qft_size": spec.m,
            "qft_count": 2,
            "qft_gate_estimate": qft["hadamards"] + qft["controlled_phases"],
            "k": scale_factor(lambdas, literal=self.config.LITERAL_SCALE),
        }
        if psi is not None:
            result = self.pipeline.apply_circulant(spec, psi, fast=True)
            info["resources"]["success_probability"] = result.success_probability
            info["resources"]["expected_repeats"] = result.expected_repeats
        return info


# Global instance for the service
report_service = ReportService()
