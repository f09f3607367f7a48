import json

import numpy as np
import pytest

from rustseg.cli import EXIT_BATCH, EXIT_CONFIG, EXIT_OK, expand_paths, main
from rustseg.imaging import load_mask, save_rgb
from rustseg.pipeline import default_config, save_config
from rustseg.synthetic import rust_board


@pytest.fixture()
def board_dir(tmp_path):
    d = tmp_path / "images"
    d.mkdir()
    for seed in (1, 2):
        image, _ = rust_board(seed, n_patches=2, min_rust_px=2000)
        save_rgb(image, d / f"board{seed}.png")
    return d


def test_analyze_writes_all_artifacts(board_dir, tmp_path, capsys):
    out = tmp_path / "out"
    code = main(["analyze", str(board_dir), "--out-dir", str(out)])
    assert code == EXIT_OK
    stdout = capsys.readouterr().out
    assert "board1:" in stdout and "board2:" in stdout
    for stem in ("board1", "board2"):
        assert (out / f"{stem}.mask.png").exists()
        assert (out / f"{stem}.overlay.png").exists()
        report = json.loads((out / f"{stem}.report.json").read_text())
        assert report["image_id"] == stem
        assert report["classification"] in ("RUSTY", "CLEAN")
    summary = json.loads((out / "summary.json").read_text())
    assert summary["analyzed"] == 2


def test_analyze_emit_subset(board_dir, tmp_path):
    out = tmp_path / "out"
    code = main(["analyze", str(board_dir / "board1.png"), "--out-dir", str(out), "--emit", "mask"])
    assert code == EXIT_OK
    assert (out / "board1.mask.png").exists()
    assert not (out / "board1.overlay.png").exists()
    assert not (out / "board1.report.json").exists()


def test_analyze_uses_config_file_and_overrides(board_dir, tmp_path, capsys):
    cfg_path = tmp_path / "cfg.json"
    save_config(default_config(), cfg_path)
    code = main(
        [
            "analyze",
            str(board_dir / "board1.png"),
            "--config",
            str(cfg_path),
            "--fusion",
            "color",
            "--min-area",
            "0",
            "--rust-threshold-pct",
            "0.1",
        ]
    )
    assert code == EXIT_OK
    assert "RUSTY" in capsys.readouterr().out


def test_analyze_bad_config_exits_2(board_dir, tmp_path, capsys):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text('{"fusion": "bogus"}')
    code = main(["analyze", str(board_dir), "--config", str(cfg_path)])
    assert code == EXIT_CONFIG
    assert "bad config" in capsys.readouterr().err


def test_analyze_empty_directory_exits_1(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    code = main(["analyze", str(empty)])
    assert code == EXIT_BATCH
    assert "batch error" in capsys.readouterr().err


def test_analyze_continues_past_corrupt_files(board_dir, tmp_path, capsys):
    corrupt = board_dir / "corrupt.png"
    corrupt.write_bytes(b"nope")
    code = main(["analyze", str(board_dir)])
    assert code == EXIT_OK
    captured = capsys.readouterr()
    assert "failed" in captured.err
    assert "2 analyzed" in captured.out


def test_mask_artifact_is_the_candidate_mask(board_dir, tmp_path):
    out = tmp_path / "out"
    main(["analyze", str(board_dir / "board1.png"), "--out-dir", str(out), "--emit", "mask"])
    from rustseg.imaging import load_rgb
    from rustseg.pipeline import candidate_mask

    image = load_rgb(board_dir / "board1.png")
    expected = candidate_mask(image, default_config())
    assert np.array_equal(load_mask(out / "board1.mask.png"), expected)


def test_expand_paths_mixes_files_and_directories(board_dir):
    (board_dir / "notes.txt").write_text("ignored")
    paths = expand_paths([str(board_dir)])
    assert [p.name for p in paths] == ["board1.png", "board2.png"]
    paths = expand_paths([str(board_dir / "board2.png"), str(board_dir)])
    assert paths[0].name == "board2.png"


def test_calibrate_rejects_bad_listen_address(tmp_path, capsys):
    code = main(["calibrate", str(tmp_path), "--listen", "nonsense"])
    assert code == EXIT_CONFIG


def test_calibrate_rejects_missing_directory(tmp_path, capsys):
    code = main(["calibrate", str(tmp_path / "absent"), "--listen", "127.0.0.1:0"])
    assert code == EXIT_BATCH
