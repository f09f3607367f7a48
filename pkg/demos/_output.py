from pathlib import Path


def output_dir() -> Path:
    out = Path(__file__).parent / "output"
    out.mkdir(exist_ok=True)
    return out
