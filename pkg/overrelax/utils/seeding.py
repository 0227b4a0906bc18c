# overrelax/utils/seeding.py
import hashlib


def derive_seed(master_seed: int, label: str) -> int:
    """
    Stable per-run seed from a master seed and a run label.

    The seed is the first 8 bytes (big-endian) of SHA-256 over
    "<master_seed>:<label>", so a preset bundle re-run with the same master
    seed reproduces every member run.
    """
    data = f"{master_seed}:{label}"
    return int(hashlib.sha256(data.encode()).hexdigest()[:16], 16)
