#!/usr/bin/env python3
"""Plot channels.csv (born) or trajectory.csv (zitter) from a volkov run directory."""

import argparse
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def plot_channels(csv, out):
    d = pd.read_csv(csv)
    fig, (top, bottom) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
    for name, label in [("norm_psi", "psi"), ("norm_a", "a"), ("norm_b", "b"), ("norm_c", "c"), ("norm_d", "d")]:
        top.plot(d.t, d[name], label=label)
    top.set_yscale("log")
    top.set_ylabel("norm")
    top.legend()
    bottom.plot(d.t, d.delta)
    bottom.set_xlabel("t")
    bottom.set_ylabel("delta")
    fig.tight_layout()
    fig.savefig(out)


def plot_trajectory(csv, out):
    d = pd.read_csv(csv)
    fig, axes = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
    for axis in "xyz":
        if d[axis].notna().all():
            axes[0].plot(d.t, d[axis] - d[axis].iloc[0], label=f"<{axis}>")
        axes[1].plot(d.t, d["v" + axis], label=f"<alpha_{axis}>")
    axes[0].legend()
    axes[1].legend()
    axes[1].set_xlabel("t")
    fig.tight_layout()
    fig.savefig(out)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("run_dir", type=pathlib.Path)
    parser.add_argument("--out", type=pathlib.Path)
    args = parser.parse_args()
    if (args.run_dir / "channels.csv").exists():
        plot_channels(args.run_dir / "channels.csv", args.out or args.run_dir / "channels.png")
    elif (args.run_dir / "trajectory.csv").exists():
        plot_trajectory(args.run_dir / "trajectory.csv", args.out or args.run_dir / "trajectory.png")
    else:
        raise SystemExit("no channels.csv or trajectory.csv in " + str(args.run_dir))


if __name__ == "__main__":
    main()
