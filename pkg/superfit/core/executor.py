import argparse
import json
import logging
import os
import sys
import time
from enum import Enum
from tempfile import mkdtemp

from superfit.core.limits import ComputeLimits
from superfit.core.records import ExperimentRecord, RecordLog, instance_key
from superfit.errors import SuperFitError

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"


class LogLevel(Enum):
    CRITICAL = logging.CRITICAL
    ERROR = logging.ERROR
    WARNING = logging.WARNING
    INFO = logging.INFO
    DEBUG = logging.DEBUG


class ServiceLogLevel(Enum):
    CRITICAL = "critical"
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"
    DEBUG = "debug"


class ClientLogLevel(Enum):
    INFO = "info"
    DEBUG = "debug"


def configure_logging(level=None):
    """
    Send the package's log records to stderr

    Parameters
    ----------
    level : str, optional
        level name; defaults to ``SUPERFIT_LOG_LEVEL`` and then WARNING.
        Unknown names fall back to WARNING.
    """
    level = (level or os.environ.get("SUPERFIT_LOG_LEVEL") or "warning").upper()
    try:
        value = LogLevel[level].value
    except KeyError:
        value = LogLevel.WARNING.value
    root = logging.getLogger("superfit")
    if not any(getattr(h, "_superfit", False) for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._superfit = True
        root.addHandler(handler)
    root.setLevel(value)
    return value


class ExecutionMode(Enum):
    SEQUENTIAL = "Runs every instance in the calling process, one after another"
    PILOT_JOB = "Submits every instance as a separate QCG PJ task running superfit_task " \
                "and merges the single-record files the tasks leave behind"


class TaskType(Enum):
    ANN = "ANN"
    VERIFY = "VERIFY"


class Task:
    """ Represents a computation to run on every instance of a sweep

    Parameters
    ----------
    type : superfit.TaskType
        ANN computes the annihilator summary, VERIFY runs the driver of a claim
    limits : superfit.ComputeLimits
        The caps the computation runs with
    name : str
        name of the Task, if not provided the name will take a value of type
    params: **kwargs
        additional parameters; VERIFY needs ``claim``, ``seed`` is optional
    """

    def __init__(self, type, limits, name=None, **params):
        if type == TaskType.VERIFY and "claim" not in params:
            raise ValueError("A VERIFY task needs the 'claim' parameter")
        self._type = type
        self._limits = limits
        self._params = params
        self._name = name if name else type

    def get_type(self):
        return self._type

    def get_limits(self):
        return self._limits

    def get_params(self):
        return self._params

    def get_name(self):
        return self._name

    def get_command(self):
        """The CLI command reproducing a single instance of the task."""
        if self._type == TaskType.ANN:
            return "ann"
        return "verify " + self._params["claim"]


def execute(task, instance):
    """
    Run ``task`` on one instance in the calling process

    Parameters
    ----------
    task : superfit.Task
    instance : dict
        ``{d, e, m, n, char}``

    Returns
    -------
    superfit.ExperimentRecord
    """
    from superfit.drivers import ann_summary, run_claim
    from superfit.fitting import GenericSetup

    limits = task.get_limits()
    start = time.perf_counter()
    try:
        setup = GenericSetup.from_instance(instance)
        if task.get_type() == TaskType.ANN:
            summary = ann_summary(setup, limits)
        else:
            params = dict(task.get_params())
            report = run_claim(params.pop("claim"), setup, limits, **params)
            summary = {"status": report.status.value, "witnesses": report.witnesses,
                       "details": report.details}
    except (SuperFitError, ValueError) as err:
        logger.warning("%s failed on %s: %s", task.get_command(), instance, err)
        summary = {"status": "error", "error": str(err)}
    return ExperimentRecord(task.get_command(), instance, summary,
                            round(time.perf_counter() - start, 3), limits.get_dict(),
                            params=task.get_params())


def limits_cover(recorded, current):
    """
    True if a run under ``recorded`` limits went at least as far as ``current`` asks

    ``None`` means unbounded; a limit missing from ``recorded`` never covers.
    """
    for name, wanted in current.items():
        if name not in recorded:
            return False
        have = recorded[name]
        if have is None:
            continue
        if wanted is None or have < wanted:
            return False
    return True


class SweepExecutor:
    """Runs tasks over a grid of instances and merges the results into one record log

    Instances run in the calling process by default, or as QCG Pilot Job tasks.

    """
    def __init__(self):
        self._qcgpjm = None
        self._tasks = {}
        self._qcgpj_tempdir = "."

    def set_manager(self, qcgpjm):
        """Use an already running QCG Pilot Job manager for pilot-job sweeps

        Parameters
        ----------
        qcgpjm : qcg.appscheduler.api.manager.Manager
            the manager that will receive one job per (task, instance) pair
        """

        self._qcgpjm = qcgpjm
        logger.info("Available resources: %s", self._qcgpjm.resources())

    def create_manager(self, dir=".",
                       resources=None,
                       reserve_core=False,
                       log_level='debug'):
        """Start a local QCG Pilot Job manager that runs sweep instances as ``superfit_task`` jobs

        Parameters
        ----------
        dir : str
            where the manager's scratch directory (``.qcgpj-*``) is created;
            per-instance record files are written there too
        resources : str, optional
            cores to hand to the manager, as ``[node:]cores[,node:cores...]``
        reserve_core : bool, optional
            keep one core for the manager itself
        log_level : str, optional
            log level of the manager service and client
        """
        from qcg.appscheduler.api.manager import LocalManager

        self._qcgpj_tempdir = mkdtemp(None, ".qcgpj-", dir)

        log_level = log_level.upper()

        try:
            service_log_level = ServiceLogLevel[log_level].value
        except KeyError:
            service_log_level = ServiceLogLevel.DEBUG.value

        try:
            client_log_level = ClientLogLevel[log_level].value
        except KeyError:
            client_log_level = ClientLogLevel.DEBUG.value

        client_conf = {'log_file': self._qcgpj_tempdir + '/api.log', 'log_level': client_log_level}

        args = ['--log', service_log_level,
                '--wd', self._qcgpj_tempdir]

        if resources:
            args.append('--nodes')
            args.append(str(resources))

        if reserve_core:
            args.append('--system-core')

        self._qcgpjm = LocalManager(args, client_conf)

    def add_task(self, task):
        """
        Add a task to run on every instance

        Parameters
        ----------
        task: superfit.Task
            The task that will be added to the sweep

        Returns
        -------
        None

        """
        self._tasks[task.get_name()] = task

    def get_tasks(self):
        return list(self._tasks.values())

    def _pending(self, instances, log):
        done = {}
        for record in log.read():
            if record.summary.get("status") != "error":
                done.setdefault(record.key, []).append(record.limits)
        pending = []
        for task in self._tasks.values():
            current = task.get_limits().get_dict()
            for instance in instances:
                recorded = done.get(instance_key(task.get_command(), instance), [])
                if any(limits_cover(limits, current) for limits in recorded):
                    logger.info("Skipping %s on %s: already recorded", task.get_command(),
                                instance)
                    continue
                pending.append((task, instance))
        return pending

    def _get_pilot_job_task(self, task, instance, out_path):
        key = "_".join(str(instance[k]) for k in ("d", "e", "m", "n", "char"))
        name = "%s_%s" % (task.get_command().replace(" ", "_"), key)
        args = [task.get_type().value,
                json.dumps(task.get_params(), sort_keys=True),
                json.dumps(instance, sort_keys=True),
                json.dumps(task.get_limits().get_dict(), sort_keys=True),
                out_path]
        return {
            "name": name,
            "execution": {
                "exec": 'superfit_task',
                "args": args,
                "wd": self._qcgpj_tempdir,
                "stdout": self._qcgpj_tempdir + '/' + name + '.stdout',
                "stderr": self._qcgpj_tempdir + '/' + name + '.stderr'
            },
            "resources": {"numCores": {"exact": 1}}
        }

    def _run_pilot_job(self, pending):
        from qcg.appscheduler.api.job import Jobs

        if self._qcgpjm is None:
            raise SuperFitError("PILOT_JOB mode needs create_manager or set_manager first")
        outputs = []
        for n, (task, instance) in enumerate(pending):
            out_path = os.path.join(self._qcgpj_tempdir, "record_%d.json" % n)
            self._qcgpjm.submit(Jobs().addStd(self._get_pilot_job_task(task, instance,
                                                                       out_path)))
            outputs.append(out_path)
        self._qcgpjm.wait4all()
        records = []
        for path in outputs:
            records.extend(RecordLog(path).read())
        return records

    def run(self, instances, out_path, mode=ExecutionMode.SEQUENTIAL):
        """ Runs every task on every instance not yet present in the record log

        Records are appended in instance-key order, whatever the completion order.

        Parameters
        ----------
        instances : list of dict
            ``{d, e, m, n, char}`` grid points
        out_path : str
            the line-delimited JSON record log
        mode : superfit.ExecutionMode
            where the instances run

        Returns
        -------
        list of superfit.ExperimentRecord
            the newly written records
        """
        log = RecordLog(out_path)
        log.touch()
        pending = self._pending(list(instances), log)
        logger.info("Running %d instances in %s mode", len(pending), mode.name)
        if mode == ExecutionMode.PILOT_JOB:
            records = self._run_pilot_job(pending)
        else:
            records = [execute(task, instance) for task, instance in pending]
        records.sort(key=lambda r: r.key)
        for record in records:
            log.append(record)
        return records

    def terminate_manager(self):
        self._qcgpjm.finish()
        self._qcgpjm.stopManager()
        self._qcgpjm.cleanup()


def task_main(argv=None):
    """Entry point of the ``superfit_task`` script: one instance, one record file."""
    parser = argparse.ArgumentParser(prog="superfit_task",
                                     description="Run a single sweep instance")
    parser.add_argument("type", choices=[t.value for t in TaskType])
    parser.add_argument("params", help="task parameters as JSON")
    parser.add_argument("instance", help="{d, e, m, n, char} as JSON")
    parser.add_argument("limits", help="compute limits as JSON")
    parser.add_argument("out", help="record file to write")
    args = parser.parse_args(argv)
    configure_logging()
    task = Task(TaskType(args.type), ComputeLimits.from_dict(json.loads(args.limits)),
                **json.loads(args.params))
    RecordLog(args.out).append(execute(task, json.loads(args.instance)))
    return 0
