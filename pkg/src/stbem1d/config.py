"""INI run configuration with validation that points at the offending line."""

from __future__ import annotations

import configparser
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import StbemError

SCHEMA = {
    "geometry": {"t", "m_steps", "degree"},
    "spectral": {"n_modes"},
    "problem": {"type", "power", "method", "rhs_operator"},
    "study": {"levels", "norms", "output", "calderon_t", "reconstruct_points"},
}
PROBLEMS = ("dirichlet", "neumann")
METHODS = ("ht", "energetic")
RHS_OPERATORS = {"kp": "Kp", "k'": "Kp", "k": "K"}
NORMS = ("L2", "dual_proxy")


class ConfigError(StbemError, ValueError):
    """Malformed or missing configuration; ``str()`` names file and line."""

    def __init__(self, message, path=None, line=None):
        where = str(path) if path is not None else "<config>"
        if line is not None:
            where += f":{line}"
        super().__init__(f"{where}: {message}")
        self.path, self.line = path, line


@dataclass(frozen=True)
class RunConfig:
    T: float = 2.0
    m_steps: int = 8
    degree: int | None = None
    n_modes: int = 256
    problem: str = "dirichlet"
    power: int = 3
    method: str = "ht"
    rhs_operator: str = "Kp"
    levels: tuple = (8, 16, 32, 64)
    norms: tuple = NORMS
    output: str = "convergence.csv"
    calderon_T: float = 1.5
    reconstruct_points: int = 5
    source: str | None = field(default=None, compare=False)


def _locate(lines, section, key):
    """1-based line of ``key`` inside ``[section]``, or None."""
    current = None
    for no, raw in enumerate(lines, 1):
        s = raw.strip()
        m = re.match(r"\[([^\]]+)\]", s)
        if m:
            current = m.group(1).strip().lower()
        elif current == section and re.match(rf"{re.escape(key)}\s*[=:]", s, re.IGNORECASE):
            return no
    return None


def _section_line(lines, section):
    for no, raw in enumerate(lines, 1):
        if raw.strip().lower() == f"[{section}]":
            return no
    return None


def load_config(path=None):
    """Read ``path`` (defaults only when None); raise ConfigError on any problem."""
    if path is None:
        return RunConfig()
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file ({exc.strerror or exc})", path) from exc
    lines = text.splitlines()
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text, source=str(path))
    except configparser.MissingSectionHeaderError as exc:
        raise ConfigError("expected a [section] header", path, exc.lineno) from exc
    except configparser.ParsingError as exc:
        lineno, _ = exc.errors[0]
        raise ConfigError("cannot parse line", path, lineno) from exc
    except configparser.DuplicateOptionError as exc:
        raise ConfigError(f"duplicate key {exc.option!r} in [{exc.section}]", path, exc.lineno) from exc
    except configparser.DuplicateSectionError as exc:
        raise ConfigError(f"duplicate section [{exc.section}]", path, exc.lineno) from exc
    except configparser.Error as exc:
        raise ConfigError(str(exc).splitlines()[0], path) from exc

    for section in parser.sections():
        if section.lower() not in SCHEMA:
            raise ConfigError(f"unknown section [{section}]", path, _section_line(lines, section.lower()))
        for key in parser[section]:
            if key not in SCHEMA[section.lower()]:
                raise ConfigError(f"unknown key {key!r} in [{section}]", path, _locate(lines, section.lower(), key))

    values = {}

    def get(section, key, convert, check=None, expect=""):
        if not parser.has_option(section, key):
            return
        raw = parser.get(section, key).strip()
        line = _locate(lines, section, key)
        try:
            val = convert(raw)
        except (ValueError, KeyError):
            raise ConfigError(f"[{section}] {key} = {raw!r}: expected {expect}", path, line) from None
        if check is not None and not check(val):
            raise ConfigError(f"[{section}] {key} = {raw!r}: expected {expect}", path, line)
        return val

    def put(name, val):
        if val is not None:
            values[name] = val

    def int_list(raw):
        return tuple(int(v) for v in raw.replace(",", " ").split())

    def name_list(raw):
        items = tuple(v.strip() for v in raw.replace(",", " ").split())
        if not items or any(v not in NORMS for v in items):
            raise ValueError(raw)
        return items

    def choice(options):
        def conv(raw):
            v = raw.lower()
            if v not in options:
                raise ValueError(raw)
            return v

        return conv

    positive = lambda v: v > 0  # noqa: E731
    put("T", get("geometry", "t", float, positive, "a positive number"))
    put("m_steps", get("geometry", "m_steps", int, positive, "a positive integer"))
    put("degree", get("geometry", "degree", int, lambda v: v in (0, 1), "0 or 1"))
    put("n_modes", get("spectral", "n_modes", int, positive, "a positive integer"))
    put("problem", get("problem", "type", choice(PROBLEMS), None, " or ".join(PROBLEMS)))
    put("power", get("problem", "power", int, lambda v: v >= 2, "an integer >= 2"))
    put("method", get("problem", "method", choice(METHODS), None, " or ".join(METHODS)))
    put("rhs_operator", get("problem", "rhs_operator", lambda r: RHS_OPERATORS[r.lower()], None, "K' or K"))
    put(
        "levels",
        get("study", "levels", int_list, lambda v: len(v) >= 1 and all(x > 0 for x in v), "positive integers"),
    )
    put("norms", get("study", "norms", name_list, None, "a list from " + ", ".join(NORMS)))
    put("output", get("study", "output", str, bool, "a file path"))
    put("calderon_T", get("study", "calderon_t", float, positive, "a positive number"))
    put("reconstruct_points", get("study", "reconstruct_points", int, positive, "a positive integer"))

    cfg = RunConfig(source=str(path), **values)
    if cfg.degree is not None and cfg.degree != (0 if cfg.problem == "dirichlet" else 1):
        raise ConfigError(
            f"degree {cfg.degree} does not match the {cfg.problem} unknown (dirichlet: 0, neumann: 1)",
            path,
            _locate(lines, "geometry", "degree"),
        )
    return cfg
