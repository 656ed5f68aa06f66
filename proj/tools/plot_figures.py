#!/usr/bin/env python3
"""Render PNG plots from the CSV files written by `cqm` into one directory."""

import csv
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def read_table(path):
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    cols = {}
    for row in rows:
        for k, v in row.items():
            cols.setdefault(k, []).append(float(v) if v not in ("", None) else float("nan"))
    return cols


def fig1(d, out):
    t = read_table(d / "fig1.csv")
    fig, ax = plt.subplots(1, 2, figsize=(9, 3.5))
    ax[0].loglog(t["g_over_delta"], t["qfi_adiabatic"])
    ax[0].set(xlabel="g / delta", ylabel="QFI")
    ax[1].semilogx(t["g_over_delta"], t["ratio"], label="QFI / tau_QSL^2")
    ax[1].axhline(1.0, color="k", ls="--", label="SQL")
    ax[1].set(xlabel="g / delta")
    ax[1].legend()
    fig.tight_layout()
    fig.savefig(out / "fig1.png", dpi=150)


def protocol(d, out, stem, x):
    t = read_table(d / f"{stem}.csv")
    fig, ax = plt.subplots(1, 2, figsize=(9, 3.5))
    ax[0].loglog(t[x], t["qfi_cd"], label="CD")
    ax[0].loglog(t[x], t["qfi_no_cd"], "--", label="no CD")
    ax[0].loglog(t[x], t["bound_hl"], "-.k", label="HL")
    ax[0].loglog(t[x], t["qfi_adiabatic"], ":k", label="adiabatic")
    ax[0].set(xlabel=x, ylabel="QFI", ylim=(1e-6, None))
    ax[0].legend()
    ax[1].semilogx(t[x], t["fidelity_cd"], label="CD")
    ax[1].semilogx(t[x], t["fidelity_no_cd"], "--", label="no CD")
    ax[1].set(xlabel=x, ylabel="fidelity")
    ax[1].legend()
    fig.tight_layout()
    fig.savefig(out / f"{stem}.png", dpi=150)


def fig3(d, out):
    t = read_table(d / "fig3.csv")
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(t["g_over_gc"], t["ratio_approx"], label="approx / HL")
    ax.plot(t["g_over_gc"], t["ratio_exact"], label="exact / HL")
    ax.axhline(1.0, color="k", ls="--")
    ax.set(xlabel="g / g_c", yscale="log")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out / "fig3.png", dpi=150)


def fig6(d, out):
    fig, ax = plt.subplots(1, 3, figsize=(11, 3.6))
    for a, label in zip(ax, "abc"):
        t = read_table(d / f"fig6_husimi_{label}.csv")
        re = sorted(set(t["re_alpha"]))
        im = sorted(set(t["im_alpha"]))
        q = [t["q_value"][i * len(re):(i + 1) * len(re)] for i in range(len(im))]
        a.contourf(re, im, q, levels=30)
        a.set(title=f"({label})", xlabel="Re alpha", ylabel="Im alpha", aspect="equal")
    fig.tight_layout()
    fig.savefig(out / "fig6.png", dpi=150)


def main():
    if len(sys.argv) != 2:
        sys.exit("usage: plot_figures.py OUTPUT_DIR")
    d = Path(sys.argv[1])
    jobs = {
        "fig1.csv": lambda: fig1(d, d),
        "fig2.csv": lambda: protocol(d, d, "fig2", "t_delta"),
        "fig3.csv": lambda: fig3(d, d),
        "fig4.csv": lambda: protocol(d, d, "fig4", "t"),
        "fig6_husimi_a.csv": lambda: fig6(d, d),
        "custom.csv": lambda: protocol(d, d, "custom", "t"),
    }
    for name, job in jobs.items():
        if (d / name).exists():
            job()


if __name__ == "__main__":
    main()
