import json
import logging
import os
from datetime import datetime, timezone

from superfit.errors import ParseError
from superfit.version import __version__

logger = logging.getLogger(__name__)

INSTANCE_FIELDS = ("d", "e", "m", "n", "char")


def instance_key(command, instance):
    """Sort and lookup key of a record: the command, then ``(d, e, m, n, char)``."""
    return (command,) + tuple(instance.get(k, 0) for k in INSTANCE_FIELDS)


class ExperimentRecord:
    """
    One self-contained result line of a sweep

    Parameters
    ----------
    command : str
        the CLI command that reproduces the result, e.g. ``verify thm1a``
    instance : dict
        ``{d, e, m, n, char}``
    summary : dict
        verdict and headline numbers of the run
    wall_time : float
        seconds spent on the instance
    limits : dict, optional
        the ``ComputeLimits.get_dict()`` the instance ran with
    timestamp : str, optional
        ISO 8601 UTC time; now by default
    engine_version : str, optional
        defaults to the installed package version
    params : dict, optional
        the task parameters, e.g. ``{claim, seed, reading}``
    """

    def __init__(self, command, instance, summary, wall_time, limits=None, timestamp=None,
                 engine_version=None, params=None):
        self.command = command
        self.instance = dict(instance)
        self.summary = dict(summary)
        self.wall_time = wall_time
        self.limits = dict(limits or {})
        self.timestamp = timestamp or datetime.now(timezone.utc).isoformat(timespec="seconds")
        self.engine_version = engine_version or __version__
        self.params = dict(params or {})

    @property
    def key(self):
        return instance_key(self.command, self.instance)

    def to_dict(self):
        return {"timestamp": self.timestamp, "command": self.command, "instance": self.instance,
                "summary": self.summary, "wall_time": self.wall_time,
                "engine_version": self.engine_version, "limits": self.limits,
                "params": self.params}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
            return cls(data["command"], data["instance"], data["summary"], data["wall_time"],
                       data.get("limits"), data["timestamp"], data["engine_version"],
                       data.get("params"))
        except (ValueError, KeyError, TypeError) as err:
            raise ParseError("Invalid experiment record: %s" % err) from err

    def __repr__(self):
        return "ExperimentRecord(%s)" % (self.key,)


class RecordLog:
    """
    Append-only line-delimited JSON file of experiment records

    Parameters
    ----------
    path : str
        the log file; created on the first append
    """

    def __init__(self, path):
        self._path = path

    def get_path(self):
        return self._path

    def read(self):
        if not os.path.exists(self._path):
            return []
        records = []
        with open(self._path) as f:
            for line in f:
                if line.strip():
                    records.append(ExperimentRecord.from_json(line))
        return records

    def keys(self, include_errors=True):
        """Keys of the logged records; ``include_errors=False`` leaves out ``error`` records."""
        return {r.key for r in self.read()
                if include_errors or r.summary.get("status") != "error"}

    def touch(self):
        """Create the file (and its directory) if it does not exist yet."""
        directory = os.path.dirname(self._path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        open(self._path, "a").close()

    def append(self, record):
        self.touch()
        with open(self._path, "a") as f:
            f.write(record.to_json() + "\n")
        logger.debug("Recorded %s in %s", record.key, self._path)
