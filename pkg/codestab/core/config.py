from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    model_config = {
        "env_file": ".env",
        "extra": "ignore",
        "env_prefix": "CODESTAB_",
    }

    # Runtime
    threads: int = Field(default=1, ge=1, description="Default worker count")
    log_level: str = Field(default="INFO")

    # Matrix thresholds
    dense_max_qubits: int = Field(default=12)
    sparse_max_qubits: int = Field(default=20)
    swt_max_qubits: int = Field(default=10)
    patch_max_qubits: int = Field(default=14)

    # Eigensolver
    eig_tol: float = Field(default=1e-10)
    eig_seed: int = Field(default=0)
    cluster_gap_factor: float = Field(default=10.0)

    # Combinatorial search
    distance_w_max: int = Field(default=8)
    gf2_enum_rank_limit: int = Field(default=20)
    group_budget: int = Field(default=2**22)
    expansion_exhaustive_limit: int = Field(default=10**6)
    biregular_retries: int = Field(default=100)

    # Numerics
    pauli_chop: float = Field(default=1e-12)
    residual_tol: float = Field(default=1e-10)
    conjugation_tol: float = Field(default=1e-9)

    # Flow bounds
    flow_m_check: int = Field(default=10**4)
    flow_sum_rtol: float = Field(default=1e-12)


settings = Settings()
