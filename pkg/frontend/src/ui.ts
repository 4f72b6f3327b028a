import { formatMoveLabel } from "./client.js";
import type { ViewState } from "./client.js";

// Pure DOM rendering of a ViewState snapshot. All numbers come from the
// snapshot; the only arithmetic here is the 1-indexed heap labels.

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

export interface UiHandlers {
  onDraft(heap: number, take: number): void;
  onSubmit(heap: number, take: number): void;
  onToggleHint(): void;
}

export function renderGame(root: HTMLElement, view: ViewState, handlers: UiHandlers): void {
  root.replaceChildren();
  const session = view.session;
  if (session === null) {
    root.append(el("p", "placeholder", "start a game to play"));
    return;
  }

  const meta = el("div", "meta");
  meta.append(el("span", "turn", `to move: ${session.to_move}`));
  meta.append(el("span", "status", session.status.replace("_", " ")));
  root.append(meta);

  session.heaps.forEach((heap, index) => {
    const row = el("div", "heap-row");
    row.append(el("span", "heap-label", `heap ${index + 1}`));
    const tokens = el("div", "tokens");
    for (let i = 1; i <= heap.tokens; i += 1) {
      const dot = el(
        "button",
        i <= heap.cap ? "token takeable" : "token",
      );
      dot.title = i <= heap.cap ? `take ${i}` : `beyond cap ${heap.cap}`;
      dot.disabled = i > heap.cap || session.status !== "in_progress" || view.busy;
      const take = i;
      dot.addEventListener("click", () => handlers.onDraft(index, take));
      if (view.pendingMove && view.pendingMove.heap === index && take <= view.pendingMove.take) {
        dot.classList.add("drafted");
      }
      tokens.append(dot);
    }
    row.append(tokens);
    row.append(el("span", "cap-chip", `cap ${heap.cap}`));
    root.append(row);
  });

  const controls = el("div", "controls");
  const submit = el("button", "submit", "take");
  submit.disabled = view.pendingMove === null || view.busy;
  submit.addEventListener("click", () => {
    if (view.pendingMove) {
      handlers.onSubmit(view.pendingMove.heap, view.pendingMove.take);
    }
  });
  controls.append(submit);
  const hintToggle = el("button", "hint-toggle", view.hintVisible ? "hide hints" : "show hints");
  hintToggle.addEventListener("click", () => handlers.onToggleHint());
  controls.append(hintToggle);
  root.append(controls);

  if (view.notice) {
    root.append(el("div", session.status === "in_progress" ? "toast" : "banner", view.notice));
  }
  if (view.hintVisible) {
    root.append(renderHintPanel(view));
  }
}

function renderHintPanel(view: ViewState): HTMLElement {
  const panel = el("div", "hint-panel");
  panel.append(el("h3", undefined, "analysis"));
  if (view.hintStale) {
    panel.append(el("span", "stale-badge", "stale"));
  }
  const hint = view.hint;
  if (hint === null) {
    panel.append(el("p", undefined, "no analysis yet"));
    return panel;
  }
  hint.heaps.forEach((heap, index) => {
    const parts = heap.zeckendorf.length ? heap.zeckendorf.join(" + ") : "0";
    panel.append(
      el("p", "hint-heap", `heap ${index + 1}: ${parts} (grundy ${heap.grundy})`),
    );
  });
  panel.append(el("p", "nim-sum", `nim-sum: ${hint.nim_sum}`));
  if (hint.winning_moves.length === 0) {
    panel.append(el("p", "no-win", "P-position: no winning move"));
  } else {
    const list = el("ul", "winning-moves");
    for (const move of hint.winning_moves) {
      list.append(el("li", undefined, formatMoveLabel(move)));
    }
    panel.append(list);
  }
  return panel;
}
