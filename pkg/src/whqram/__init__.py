"""Walsh-Hadamard QRAM oracles: synthesis, exact verification and cost estimates."""
from .circuit import Circuit, Gate, ResourceReport, depth_metrics, qasm_export
from .oracles import OracleCircuit, OracleRequest, build_oracle
from .simulator import verify_oracle
from .spectrum import FunctionTable, Spectrum, degree_profile, fwht, ifwht

__all__ = [
    "Circuit",
    "FunctionTable",
    "Gate",
    "OracleCircuit",
    "OracleRequest",
    "ResourceReport",
    "Spectrum",
    "build_oracle",
    "degree_profile",
    "depth_metrics",
    "fwht",
    "ifwht",
    "qasm_export",
    "verify_oracle",
]
