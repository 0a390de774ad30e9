// Pure snapshot -> DOM rendering. No rule logic lives here: every visible
// fact (board contents, status, decided colors) comes straight from the
// latest server snapshot, and interactive elements carry data- attributes
// for the app's single delegated click handler.

import type { Mode, Move, OriginalMove, Snapshot, VariantMove } from "./api.js";
import { colorFor } from "./palette.js";

export interface ConfirmMoveChip {
  kind: "move";
  move: OriginalMove;
}

export interface ConfirmNewGameChip {
  kind: "new-game";
  mode: Mode;
}

export interface UiState {
  pending: boolean;
  banner: { kind: "error" | "info"; text: string } | null;
  highlight: Move | null;
  confirm: ConfirmMoveChip | ConfirmNewGameChip | null;
}

export const idleUi: UiState = {
  pending: false,
  banner: null,
  highlight: null,
  confirm: null,
};

const STATUS_TEXT: Record<string, string> = {
  playing: "Playing",
  won: "You won! Every box still holds a token, one shape per color.",
  lost: "You lost. No winning end state is reachable from here.",
};

function isHighlighted(move: Move | null, boxIndex: number, color: number, shape: string): boolean {
  if (!move) return false;
  if ("boxIndex" in move && move.boxIndex !== boxIndex) return false;
  return move.color === color && move.shape === shape;
}

export function renderBoard(doc: Document, snapshot: Snapshot, ui: UiState): HTMLElement {
  const root = doc.createElement("div");
  root.className = "board-view";
  root.dataset.status = snapshot.status;
  root.dataset.mode = snapshot.mode;

  const status = doc.createElement("div");
  status.className = `status-banner status-${snapshot.status}`;
  status.textContent = STATUS_TEXT[snapshot.status] ?? snapshot.status;
  root.appendChild(status);

  if (ui.banner) {
    const banner = doc.createElement("div");
    banner.className = `alert alert-${ui.banner.kind}`;
    banner.setAttribute("role", "alert");
    banner.textContent = ui.banner.text;
    root.appendChild(banner);
  }

  if (ui.confirm) {
    root.appendChild(renderConfirmChip(doc, ui));
  }

  if (snapshot.mode === "original" && snapshot.numColors > 0) {
    root.appendChild(renderLegend(doc, snapshot));
  }

  const boxes = doc.createElement("div");
  boxes.className = "boxes";
  snapshot.boxes.forEach((box, boxIndex) => {
    const boxEl = doc.createElement("div");
    boxEl.className = "box";
    boxEl.dataset.box = String(boxIndex);
    box.forEach((token) => {
      const btn = doc.createElement("button");
      btn.type = "button";
      btn.className = `token ${token.shape}`;
      if (snapshot.decided[String(token.color)]) btn.classList.add("decided");
      if (isHighlighted(ui.highlight, boxIndex, token.color, token.shape)) {
        btn.classList.add("hint-highlight");
      }
      btn.dataset.action = "token";
      btn.dataset.box = String(boxIndex);
      btn.dataset.color = String(token.color);
      btn.dataset.shape = token.shape;
      btn.style.setProperty("--token-color", colorFor(token.color));
      btn.setAttribute("aria-label", `${token.shape} token of color ${token.color} in box ${boxIndex + 1}`);
      btn.disabled = ui.pending || snapshot.status !== "playing";
      boxEl.appendChild(btn);
    });
    boxes.appendChild(boxEl);
  });
  root.appendChild(boxes);
  return root;
}

function renderLegend(doc: Document, snapshot: Snapshot): HTMLElement {
  const legend = doc.createElement("div");
  legend.className = "legend";
  for (let color = 1; color <= snapshot.numColors; color += 1) {
    const chip = doc.createElement("span");
    chip.className = "legend-chip";
    const removed = snapshot.decided[String(color)];
    if (removed) {
      chip.classList.add("decided");
      chip.textContent = `color ${color}: ${removed} removed`;
    } else {
      chip.textContent = `color ${color}`;
    }
    chip.style.setProperty("--token-color", colorFor(color));
    legend.appendChild(chip);
  }
  return legend;
}

function renderConfirmChip(doc: Document, ui: UiState): HTMLElement {
  const chip = doc.createElement("div");
  chip.className = "confirm-chip";
  const text = doc.createElement("span");
  const confirm = ui.confirm!;
  if (confirm.kind === "move") {
    text.textContent =
      `Remove ALL ${confirm.move.shape} tokens of color ${confirm.move.color}?`;
  } else {
    text.textContent = `Abandon this game and start a new one in ${confirm.mode} mode?`;
  }
  chip.appendChild(text);

  const yes = doc.createElement("button");
  yes.type = "button";
  yes.dataset.action = "confirm-yes";
  yes.textContent = confirm.kind === "move" ? "Remove them" : "Start new game";
  yes.disabled = ui.pending;
  chip.appendChild(yes);

  const no = doc.createElement("button");
  no.type = "button";
  no.dataset.action = "confirm-no";
  no.textContent = "Cancel";
  no.disabled = ui.pending;
  chip.appendChild(no);
  return chip;
}
