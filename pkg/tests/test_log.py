import io

from core.log import Log, LogEntry


def test_entries_keep_level_and_source():
    Log.set_verbosity(2)
    Log.clear()
    Log.debug("summary line", 1)
    Log.debug("per-op line", 2)
    Log.debug("internal line", 3)

    entries = Log.entries()
    assert [e.text for e in entries] == ["Log cleared", "summary line", "per-op line"]
    assert entries[1].source == "test_log.py"
    assert [e.text for e in Log.entries(max_level=1)] == ["Log cleared", "summary line"]
    assert Log.count() == 3


def test_stream_echo_and_render():
    buf = io.StringIO()
    Log.set_verbosity(1)
    Log.set_stream(buf)
    Log.debug("echoed", 1)
    Log.set_stream(None)
    Log.debug("not echoed", 1)

    lines = buf.getvalue().splitlines()
    assert len(lines) == 1
    assert lines[0].endswith("summary [test_log.py] echoed")


def test_render_clamps_unknown_levels():
    entry = LogEntry("01/01/2025 00:00:00", 9, "x.py", "deep")
    assert entry.render() == "[01/01/2025 00:00:00] detail  [x.py] deep"


def test_write_to_file(tmp_path):
    Log.set_verbosity(1)
    Log.clear()
    Log.debug("kept", 0)
    path = tmp_path / "run.log"
    Log.write_to_file(str(path))

    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0].endswith("[log.py] Log cleared")
    assert lines[1].endswith("error   [test_log.py] kept")
    assert Log.entries()[-1].text == f"Log written to file: {path}"
