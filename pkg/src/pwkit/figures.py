"""Figure rendering for audit reports.

Renders the measured structural counts of a batch of kernelizer runs
against their asserted bounds, writing PNG files next to the delimited
output.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def render_audit_figures(rows: list[dict], outdir: str, family: str) -> list[str]:
    """Write the audit figures and return their paths.

    ``rows`` are the per-instance audit records produced by the audit
    driver (one dict per kernelized instance).
    """
    os.makedirs(outdir, exist_ok=True)
    paths = []

    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    xs = [r["simplicial_bound"] for r in rows]
    ys = [r["simplicial_components"] for r in rows]
    lim = max(xs + ys + [1])
    ax.scatter(xs, ys, s=18, alpha=0.6, label="kernelized instances")
    ax.plot([0, lim], [0, lim], ls="--", lw=1, color="tab:red", label="bound (equality)")
    ax.set_xlabel("simplicial component bound (2k+3)·l²")
    ax.set_ylabel("simplicial components in output")
    ax.set_title(f"Component counts vs. bound — {family}")
    ax.legend()
    fig.tight_layout()
    path = os.path.join(outdir, f"audit-{family}-components.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    paths.append(path)

    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    ratios = [r["applications"] / max(1, r["application_budget"]) for r in rows]
    ax.hist(ratios, bins=20, color="tab:blue", alpha=0.8)
    ax.axvline(1.0, ls="--", color="tab:red", label="budget")
    ax.set_xlabel("rule applications / budget")
    ax.set_ylabel("instances")
    ax.set_title(f"Scheduler effort vs. budget — {family}")
    ax.legend()
    fig.tight_layout()
    path = os.path.join(outdir, f"audit-{family}-applications.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    paths.append(path)
    return paths
