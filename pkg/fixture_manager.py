import json
import logging
import os
from typing import Any, Dict, Optional

import config
from utils import dump_json

logger = logging.getLogger(__name__)

THM22_FILE = "thm22_word.json"
GOLDEN_DIR = "golden"


class FixtureManager:
    """Loads the shipped word data and writes golden outputs; files are cached after the first read"""

    def __init__(self, fixture_dir: Optional[str] = None):
        self.fixture_dir = fixture_dir or config.get_fixture_dir()
        self.cache: Dict[str, Any] = {}

    def load(self, name: str) -> Any:
        if name in self.cache:
            return self.cache[name]
        path = os.path.join(self.fixture_dir, name)
        try:
            with open(path, encoding="utf-8") as handle:
                data = json.load(handle)
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"Failed to load fixture {path}: {e}")
            raise
        self.cache[name] = data
        logger.debug(f"Loaded fixture {path}")
        return data

    def thm22_word(self) -> Dict:
        """Permutations P1..P6 (in that order), the reflection root index and the translation index"""
        data = self.load(THM22_FILE)
        permutations = data.get("permutations", [])
        if len(permutations) != 6 or any(sorted(p) != list(range(1, 10)) for p in permutations):
            raise ValueError(f"{THM22_FILE} must hold six permutations of 1..9")
        return data

    def golden(self, name: str) -> Any:
        return self.load(os.path.join(GOLDEN_DIR, name))

    def emit_fixtures(self, target_dir: Optional[str] = None) -> Dict[str, str]:
        """Write the word data and the golden outputs under target_dir; returns name -> path"""
        # Local import: the golden outputs are produced by the command handlers
        from surface_handlers import golden_outputs

        target = target_dir or self.fixture_dir
        os.makedirs(os.path.join(target, GOLDEN_DIR), exist_ok=True)

        documents = {THM22_FILE: self.thm22_word()}
        documents.update({os.path.join(GOLDEN_DIR, name): doc for name, doc in golden_outputs(self).items()})

        written = {}
        for name, document in sorted(documents.items()):
            path = os.path.join(target, name)
            with open(path, "w", encoding="utf-8") as handle:
                handle.write(dump_json(document) + "\n")
            written[name] = path
            logger.info(f"Wrote fixture {path}")
        return written
