"""Tests for the bench command."""

from pfcft.commands import bench as bench_cmd


class TestTimeCalls:
    """Test suite for time_calls."""

    def test_one_timing_per_call(self, mocker):
        """Test the function runs once per repeat."""
        fn = mocker.Mock()

        timings = bench_cmd.time_calls(fn, 3)

        assert fn.call_count == 3
        assert len(timings) == 3
        assert all(t >= 0 for t in timings)


class TestBenchCommand:
    """Test suite for the bench command."""

    def test_bench_reports_counts(self, mocker):
        """Test timings and the plan's counted operations are shown."""
        table = mocker.patch("pfcft.commands.bench.display_table")
        report = mocker.patch("pfcft.commands.bench.display_report")

        bench_cmd.bench(n=15, l=4, factors="3,5", repeats=2)

        rows = table.call_args.args[2]
        assert [row[0] for row in rows] == [
            "build + optimize",
            "transform (best)",
            "transform (mean)",
        ]
        counted = report.call_args.args[1]
        assert counted.mult == 20
        assert counted.total == 7 * 20 + counted.add
