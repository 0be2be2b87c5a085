import argparse
import os

import pytest

from superfit import ComputeLimits, ExecutionMode, ExperimentRecord, RecordLog, SweepExecutor
from superfit import Task, TaskType
from superfit.core.executor import (LogLevel, configure_logging, execute, limits_cover,
                                    task_main)
from superfit.errors import ParseError

if "SCRATCH" in os.environ:
    tmpdir = os.environ["SCRATCH"]
else:
    tmpdir = "/tmp/"

INSTANCES = [{"d": d, "e": e, "m": 1, "n": 0, "char": 0}
             for d, e in ((2, 0), (1, 1), (0, 1), (1, 0))]


def test_limits_validation():
    limits = ComputeLimits(i_max=3, max_pairs=100)
    assert limits.get_dict()["i_max"] == 3
    assert limits.j_max_for(1, 1) == 7
    assert ComputeLimits(j_max=2).j_max_for(1, 1) == 2
    for kwargs in ({"i_max": -1}, {"max_pairs": 0}, {"sample_cap": 0}, {"t_max": -2}):
        with pytest.raises(ValueError):
            ComputeLimits(**kwargs)


def test_limits_from_args():
    args = argparse.Namespace(i_max=2, j_max=None, t_max=3)
    limits = ComputeLimits.from_args(args)
    assert limits.i_max == 2
    assert limits.t_max == 3
    assert limits.sample_cap == 6
    assert ComputeLimits.from_dict(limits.get_dict()) == limits


def test_task():
    task = Task(TaskType.VERIFY, ComputeLimits(), claim="thm1a")
    assert task.get_name() == TaskType.VERIFY
    assert task.get_params() == {"claim": "thm1a"}
    assert task.get_command() == "verify thm1a"
    assert Task(TaskType.ANN, ComputeLimits(), name="ann").get_command() == "ann"
    with pytest.raises(ValueError):
        Task(TaskType.VERIFY, ComputeLimits())


def test_execute_single_instance():
    task = Task(TaskType.VERIFY, ComputeLimits(), claim="thm1a")
    record = execute(task, {"d": 0, "e": 1, "m": 1, "n": 0, "char": 0})
    assert record.summary["status"] == "pass"
    assert record.command == "verify thm1a"
    assert record.limits == ComputeLimits().get_dict()


def test_execute_reports_errors():
    task = Task(TaskType.VERIFY, ComputeLimits(), claim="thm1a")
    record = execute(task, {"d": 0, "e": 1, "m": 1, "n": 0, "char": 6})
    assert record.summary["status"] == "error"


def test_records_round_trip(tmp_path):
    log = RecordLog(str(tmp_path / "sub" / "records.jsonl"))
    assert log.read() == []
    record = ExperimentRecord("ann", {"d": 1, "e": 0, "m": 1, "n": 0, "char": 0},
                              {"count": 1}, 0.5)
    log.append(record)
    (back,) = log.read()
    assert back.to_dict() == record.to_dict()
    assert log.keys() == {("ann", 1, 0, 1, 0, 0)}
    with pytest.raises(ParseError):
        ExperimentRecord.from_json("{}")


def test_sweep_orders_and_resumes(tmp_path):
    out = str(tmp_path / "ann.jsonl")
    executor = SweepExecutor()
    executor.add_task(Task(TaskType.ANN, ComputeLimits(filtration_max=0)))
    first = executor.run(INSTANCES[:2], out)
    assert len(first) == 2
    second = executor.run(INSTANCES, out)
    assert len(second) == 2
    keys = [r.key for r in RecordLog(out).read()]
    assert keys[:2] == sorted(keys[:2])
    assert keys[2:] == sorted(keys[2:])
    assert len(set(keys)) == 4


def test_task_script(tmp_path):
    out = str(tmp_path / "one.jsonl")
    assert task_main(["VERIFY", '{"claim": "shift"}',
                      '{"d": 1, "e": 0, "m": 1, "n": 0, "char": 0}', "{}", out]) == 0
    (record,) = RecordLog(out).read()
    assert record.summary["status"] == "pass"


def test_configure_logging():
    assert configure_logging("debug") == LogLevel.DEBUG.value
    assert configure_logging("nonsense") == LogLevel.WARNING.value


def test_pilot_job_sweep():
    pytest.importorskip("qcg.appscheduler.api.manager")

    out = os.path.join(tmpdir, "superfit_pj_test.jsonl")
    if os.path.exists(out):
        os.remove(out)
    executor = SweepExecutor()
    executor.create_manager(dir=tmpdir, resources="2", log_level="info")
    executor.add_task(Task(TaskType.ANN, ComputeLimits()))
    try:
        records = executor.run(INSTANCES, out, ExecutionMode.PILOT_JOB)
    finally:
        executor.terminate_manager()
    assert len(records) == len(INSTANCES)
    assert all("count" in r.summary for r in records)


def test_records_keep_task_params():
    task = Task(TaskType.VERIFY, ComputeLimits(), claim="conj41", seed=3, reading="literal")
    record = execute(task, {"d": 0, "e": 1, "m": 1, "n": 0, "char": 0})
    assert record.params == {"claim": "conj41", "seed": 3, "reading": "literal"}
    back = ExperimentRecord.from_json(record.to_json())
    assert back.params == record.params
    assert ExperimentRecord("ann", INSTANCES[0], {}, 0.1).params == {}


def test_limits_cover():
    current = ComputeLimits(i_max=3).get_dict()
    assert limits_cover(current, current)
    assert limits_cover(ComputeLimits(i_max=5).get_dict(), current)
    assert not limits_cover(ComputeLimits(i_max=2).get_dict(), current)
    assert limits_cover(ComputeLimits(i_max=3, max_pairs=None).get_dict(),
                        ComputeLimits(i_max=3, max_pairs=50).get_dict())
    assert not limits_cover(ComputeLimits(i_max=3, max_pairs=50).get_dict(), current)
    assert not limits_cover({}, current)


def test_sweep_reruns_errors_and_smaller_limits(tmp_path):
    out = str(tmp_path / "ann.jsonl")
    instance = INSTANCES[3]
    limits = ComputeLimits(filtration_max=0)
    task = Task(TaskType.ANN, limits)
    log = RecordLog(out)
    log.append(ExperimentRecord(task.get_command(), instance,
                                {"status": "error", "error": "interrupted"}, 0.1,
                                limits.get_dict()))
    executor = SweepExecutor()
    executor.add_task(task)
    (rerun,) = executor.run([instance], out)
    assert "status" not in rerun.summary
    assert executor.run([instance], out) == []
    assert log.keys(include_errors=False) == {rerun.key}

    deeper = SweepExecutor()
    deeper.add_task(Task(TaskType.ANN, ComputeLimits(i_max=6, filtration_max=0)))
    assert len(deeper.run([instance], out)) == 1
    shallower = SweepExecutor()
    shallower.add_task(Task(TaskType.ANN, ComputeLimits(i_max=2, filtration_max=0)))
    assert shallower.run([instance], out) == []
    assert len(log.read()) == 3
