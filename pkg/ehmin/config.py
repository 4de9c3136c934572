import os

from dotenv import load_dotenv

load_dotenv()

# Genetic algorithm defaults (every value is overridable per run)
GA_N_GEN = int(os.getenv("EHMIN_N_GEN", "4"))
GA_N_POPULATION = int(os.getenv("EHMIN_N_POPULATION", "40"))
GA_N_BAD = int(os.getenv("EHMIN_N_BAD", "10"))
# unset: each child gets GA_MUTATIONS_PER_CHILD mutated genes on average, at most
# GA_P_MUT_CAP per gene
_p_mut = os.getenv("EHMIN_P_MUT")
GA_P_MUT = float(_p_mut) if _p_mut else None
GA_P_MUT_CAP = 0.05
GA_MUTATIONS_PER_CHILD = float(os.getenv("EHMIN_MUTATIONS_PER_CHILD", "2.0"))
GA_M_MUT = float(os.getenv("EHMIN_M_MUT", "1.0"))
GA_M_INIT = float(os.getenv("EHMIN_M_INIT", "3.0"))
GA_N_EPOCHS = int(os.getenv("EHMIN_N_EPOCHS", "2000"))
GA_EPSILON = float(os.getenv("EHMIN_EPSILON", "1e-6"))
GA_N_TERM = int(os.getenv("EHMIN_N_TERM", "200"))
GA_N_ISLANDS = int(os.getenv("EHMIN_N_ISLANDS", "8"))
GA_P_MIG = float(os.getenv("EHMIN_P_MIG", "0.02"))
GA_SEED = int(os.getenv("EHMIN_SEED", "0"))
GA_N_WORKERS = int(os.getenv("EHMIN_N_WORKERS", "1"))
GA_N_ROUNDS = int(os.getenv("EHMIN_N_ROUNDS", "3"))
GA_SHRINK = float(os.getenv("EHMIN_SHRINK", "0.1"))

# Random-restart oracle
BRUTE_RESTARTS = int(os.getenv("EHMIN_BRUTE_RESTARTS", "32"))
BRUTE_STEPS = int(os.getenv("EHMIN_BRUTE_STEPS", "2000"))

LOG_LEVEL = os.getenv("EHMIN_LOG_LEVEL", "WARNING")

# HTTP service
CORS_ORIGINS = [
    origin.strip()
    for origin in os.getenv("EHMIN_CORS_ORIGINS", "http://localhost:3000").split(",")
    if origin.strip()
]
HOST = os.getenv("EHMIN_HOST", "0.0.0.0")
PORT = int(os.getenv("EHMIN_PORT", "8000"))
