from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, title, elapsed, limit, note in sorted(RESULTS):
        extra = f"  [{note}]" if note else ""
        terminalreporter.write_line(
            f"{status}  criterion {number:>2}: {title} ({elapsed:.2f} s / {limit:g} s){extra}")
