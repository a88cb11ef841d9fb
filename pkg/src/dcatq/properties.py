"""Line-oriented ``key=value`` file parsing (properties format).

Used for the pipeline configuration and for small bundled tables such as
the media-type alias list. UTF-8, ``#`` starts a comment line, blank lines
ignored, first ``=`` splits key and value, whitespace around both trimmed.
"""

from __future__ import annotations


class PropertiesError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_properties(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise PropertiesError(f"expected key=value, got {line!r}", lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        if not key:
            raise PropertiesError("empty key", lineno)
        out[key] = value.strip()
    return out


def load_properties(path) -> dict[str, str]:
    from pathlib import Path

    return parse_properties(Path(path).read_text(encoding="utf-8"))
