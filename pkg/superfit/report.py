import json
from enum import Enum


class Status(Enum):
    PASS = "pass"
    FAIL = "fail"
    MISMATCH = "mismatch"
    SKIPPED = "skipped"


class Report:
    """
    Outcome of one verification driver

    Parameters
    ----------
    claim : str
        the name of the checked statement, e.g. ``thm1a``
    instance : dict
        the instance the claim was checked on, e.g. ``{d, e, m, n, char}``
    status : superfit.Status
        outcome of the check
    witnesses : list, optional
        printable evidence (generators, failing elements, ...)
    details : dict, optional
        additional JSON-serializable summary values
    """

    def __init__(self, claim, instance, status, witnesses=None, details=None):
        self.claim = claim
        self.instance = dict(instance)
        self.status = status
        self.witnesses = list(witnesses or [])
        self.details = dict(details or {})

    @property
    def passed(self):
        return self.status == Status.PASS

    def to_dict(self):
        return {"claim": self.claim, "instance": self.instance, "status": self.status.value,
                "witnesses": self.witnesses, "details": self.details}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    def __repr__(self):
        return "Report(%s %s: %s)" % (self.claim, self.instance, self.status.value)


def combine(claim, instance, reports):
    """Merge sub-reports: passes only when every part passes."""
    reports = list(reports)
    status = Status.PASS if all(r.passed for r in reports) else Status.FAIL
    return Report(claim, instance, status,
                  details={"parts": [r.to_dict() for r in reports]})
