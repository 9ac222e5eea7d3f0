import os
from dataclasses import dataclass
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

@dataclass
class Config:
    # Enumeration limits
    tuple_guard: int = 100_000_000
    normalize_max_dim: int = 24
    normalize_cap: int = 1024

    # Rate search
    sigma_cap_factor: float = 3.0
    tie_tolerance: float = 1e-12
    rate_precision: int = 9

    # Tabu search for seed codes
    tabu_tenure: int = 8
    tabu_stagnation: int = 2000
    tabu_budget: int = 10_000

    # Analytic bounds
    theorem_n_limit: int = 1_000_000

    # Logging
    log_dir: str = "./logs"
    log_level: str = "INFO"

def get_config() -> Config:
    """Get configuration from environment variables."""
    config = Config(
        # Enumeration limits
        tuple_guard=int(os.getenv("ADDER_UD_TUPLE_GUARD", "100000000")),
        normalize_max_dim=int(os.getenv("ADDER_UD_NORMALIZE_MAX_DIM", "24")),
        normalize_cap=int(os.getenv("ADDER_UD_NORMALIZE_CAP", "1024")),

        # Rate search
        sigma_cap_factor=float(os.getenv("ADDER_UD_SIGMA_CAP", "3.0")),
        tie_tolerance=float(os.getenv("ADDER_UD_TIE_TOLERANCE", "1e-12")),
        rate_precision=int(os.getenv("ADDER_UD_RATE_PRECISION", "9")),

        # Tabu search for seed codes
        tabu_tenure=int(os.getenv("ADDER_UD_TABU_TENURE", "8")),
        tabu_stagnation=int(os.getenv("ADDER_UD_TABU_STAGNATION", "2000")),
        tabu_budget=int(os.getenv("ADDER_UD_TABU_BUDGET", "10000")),

        # Analytic bounds
        theorem_n_limit=int(os.getenv("ADDER_UD_THEOREM_N_LIMIT", "1000000")),

        # Logging
        log_dir=os.getenv("ADDER_UD_LOG_DIR", "./logs"),
        log_level=os.getenv("ADDER_UD_LOG_LEVEL", "INFO").upper(),
    )

    return config
