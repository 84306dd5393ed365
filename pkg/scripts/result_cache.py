# ---------------------------------------------------------------
# result_cache.py
#
# Purpose:
#   Content-addressed file cache for CLI reports. The key hashes the
#   command, its canonical parameters and ENGINE_VERSION; the value is
#   the exact report text and exit code of the first run.
#
# Requirements:
#   - Config: ENGINE_VERSION, CACHE_DIR.
#
# Output:
#   - ResultCache.get returns (report_text, exit_code) or None.
#
# Notes:
#   - Entries are written to a temp file in the cache directory and
#     renamed into place, so readers never see a partial entry.
#   - A stored engine_version other than the current one is a miss.
# ---------------------------------------------------------------

import hashlib
import json
import logging
import os
import tempfile
from datetime import datetime, timezone
from pathlib import Path

from config.settings import CACHE_DIR, ENGINE_VERSION

logger = logging.getLogger(__name__)


def stable_json(value) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def cache_key(command: str, params: dict, engine_version: str = ENGINE_VERSION) -> str:
    payload = {"command": command, "params": params, "engine_version": engine_version}
    return hashlib.sha256(stable_json(payload).encode("utf-8")).hexdigest()


class ResultCache:
    def __init__(self, directory=CACHE_DIR, engine_version: str = ENGINE_VERSION):
        self.directory = Path(directory)
        self.engine_version = engine_version

    def key(self, command: str, params: dict) -> str:
        return cache_key(command, params, self.engine_version)

    def path_for(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, key: str):
        path = self.path_for(key)
        if not path.exists():
            return None
        try:
            entry = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as err:
            logger.warning(f"unreadable cache entry {path.name}: {err}")
            return None
        if entry.get("key") != key or entry.get("engine_version") != self.engine_version:
            logger.debug(f"stale cache entry {path.name}")
            return None
        logger.debug(f"cache hit {key[:12]}")
        return entry["report_text"], int(entry.get("exit_code", 0))

    def put(self, key: str, report_text: str, exit_code: int = 0) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        entry = {
            "key": key,
            "engine_version": self.engine_version,
            "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "exit_code": exit_code,
            "report_text": report_text,
        }
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".entry-", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                json.dump(entry, handle, ensure_ascii=False)
            os.replace(tmp, self.path_for(key))
        except BaseException:
            if os.path.exists(tmp):
                os.remove(tmp)
            raise
        return self.path_for(key)
