import os
from dotenv import load_dotenv

# Load .env if present (local runs). Nothing here requires a .env file.
load_dotenv()

BALL_CAP            = int(os.getenv("SLANT_BALL_CAP", "1000000"))
DEFAULT_SEED        = int(os.getenv("SLANT_SEED", "20240601"))
DEFAULT_RES_RADIUS  = int(os.getenv("SLANT_RES_RADIUS", "3"))
DEFAULT_RADIUS      = int(os.getenv("SLANT_RADIUS", "2"))
DEFAULT_WORKERS     = int(os.getenv("SLANT_WORKERS", "1"))
GENERICITY_RETRIES  = int(os.getenv("SLANT_GENERICITY_RETRIES", "16"))
LOG_LEVEL           = os.getenv("SLANT_LOG_LEVEL", "INFO").upper()


def ball_cap():
    """Ball enumeration cap, re-read from the environment on every call."""
    return int(os.getenv("SLANT_BALL_CAP", str(BALL_CAP)))


def summarize():
    return {
        "SLANT_BALL_CAP": ball_cap(),
        "SLANT_SEED": DEFAULT_SEED,
        "SLANT_RES_RADIUS": DEFAULT_RES_RADIUS,
        "SLANT_RADIUS": DEFAULT_RADIUS,
        "SLANT_WORKERS": DEFAULT_WORKERS,
        "SLANT_GENERICITY_RETRIES": GENERICITY_RETRIES,
        "SLANT_LOG_LEVEL": LOG_LEVEL,
    }
