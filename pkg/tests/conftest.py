"""Collects acceptance-criterion outcomes and prints one line per criterion."""

_RESULTS = {}


def pytest_runtest_logreport(report):
    if report.when == "setup" and report.failed or report.when == "call":
        props = dict(report.user_properties)
        if "criterion" in props:
            num, title = props["criterion"]
            prev_ok, prev_title, prev_detail = _RESULTS.get(num, (True, "", ""))
            title = f"{prev_title}; {title}" if prev_title else title
            detail = "; ".join(d for d in (prev_detail, props.get("detail", "")) if d)
            _RESULTS[num] = (prev_ok and report.passed, title, detail)


def pytest_runtest_setup(item):
    mark = item.get_closest_marker("acceptance")
    if mark is not None:
        item.user_properties.append(("criterion", tuple(mark.args)))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_RESULTS):
        ok, title, detail = _RESULTS[num]
        line = f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
