import { Api } from "./api.js";
import { GameClient } from "./client.js";
import { renderGame } from "./ui.js";
import type { EngineRole } from "./types.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("service") ?? `${window.location.protocol}//${window.location.hostname}:8000`;

const client = new GameClient(new Api(baseUrl));
const board = document.getElementById("board") as HTMLElement;
const form = document.getElementById("new-game") as HTMLFormElement;
const heapsInput = document.getElementById("heaps") as HTMLInputElement;
const roleSelect = document.getElementById("role") as HTMLSelectElement;

function repaint(): void {
  renderGame(board, client.state(), {
    onDraft(heap, take) {
      client.draftMove(heap, take);
      repaint();
    },
    onSubmit(heap, take) {
      void client.makeMove(heap, take).then(repaint);
    },
    onToggleHint() {
      void client.toggleHint().then(repaint);
    },
  });
}

form.addEventListener("submit", (event) => {
  event.preventDefault();
  void client
    .newGame(heapsInput.value, roleSelect.value as EngineRole)
    .then(repaint);
});

repaint();
