from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path


def resolve_profile_config_path(*, repo_root: Path, base_name: str, profile: str | None) -> tuple[Path, str]:
    """Return the config path to use for a given base file name and profile.

    Resolution order:
    1) config/{base_name}.{profile}.json if profile is provided and file exists
    2) config/{base_name}.json

    Returns (path, reason) where reason is "profile" or "fallback".
    """

    config_dir = repo_root / "config"
    if profile:
        prof = str(profile).strip().lower()
        prof_path = config_dir / f"{base_name}.{prof}.json"
        if prof_path.exists():
            return prof_path, "profile"
    return config_dir / f"{base_name}.json", "fallback"


def load_settings_profile(*, repo_root: Path, profile: str | None = None, path_override: Path | None = None) -> Settings:
    """Load settings honoring per-profile files and optional overrides."""

    if path_override is not None:
        print(f"[config] profile={profile or '-'} settings={path_override} (override)", file=sys.stderr)
        return load_settings(path_override)
    path, reason = resolve_profile_config_path(repo_root=repo_root, base_name="settings", profile=profile)
    if not path.exists():
        print(f"[config] profile={profile or '-'} settings=<defaults> (missing {path})", file=sys.stderr)
        return Settings()
    print(f"[config] profile={profile or '-'} settings={path} ({reason})", file=sys.stderr)
    return load_settings(path)


@dataclass(frozen=True)
class Settings:
    default_limit: int = 100_000
    memory_budget_mb: int = 64
    # Exhaustive oracle: term length bound and per-length value-set cap.
    oracle_depth: int = 14
    oracle_value_cap: int = 2_000_000
    # Decimal digits beyond which ^ values are not materialised.
    digit_cap: int = 1_000_000
    progress_every: int = 100_000
    # Sweep size for the successor/addition-only opsets (c(n) = n).
    linear_sweep_limit: int = 1000
    extremal_kmax: int = 100
    structure_kmax: int = 60
    prune_sums: bool = True
    debug: bool = False


def load_settings(path: Path) -> Settings:
    data = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ValueError(f"{path}: settings must be a JSON object")
    d = Settings()

    def _pos_int(key: str, default: int) -> int:
        raw = data.get(key, default)
        try:
            v = int(raw)
        except (TypeError, ValueError):
            raise ValueError(f"{path}: {key} must be an integer, got {raw!r}") from None
        if v < 1:
            raise ValueError(f"{path}: {key} must be >= 1, got {v}")
        return v

    return Settings(
        default_limit=_pos_int("default_limit", d.default_limit),
        memory_budget_mb=_pos_int("memory_budget_mb", d.memory_budget_mb),
        oracle_depth=_pos_int("oracle_depth", d.oracle_depth),
        oracle_value_cap=_pos_int("oracle_value_cap", d.oracle_value_cap),
        digit_cap=_pos_int("digit_cap", d.digit_cap),
        progress_every=_pos_int("progress_every", d.progress_every),
        linear_sweep_limit=_pos_int("linear_sweep_limit", d.linear_sweep_limit),
        extremal_kmax=_pos_int("extremal_kmax", d.extremal_kmax),
        structure_kmax=_pos_int("structure_kmax", d.structure_kmax),
        prune_sums=bool(data.get("prune_sums", d.prune_sums)),
        debug=bool(data.get("debug", d.debug)),
    )
