/**
 * DOM wiring for the sketch-and-complete page. Draw on the canvas, type
 * editing commands, request completions, and accept a candidate to fold
 * it back into your program.
 */

import { ApiClient, Candidate } from "./api.js";
import { fitView, pathOf, CANDIDATE_COLOR, PROGRAM_COLOR, STROKE_COLOR } from "./overlay.js";
import { UiSession } from "./session.js";
import { Point, prepareStroke } from "./stroke.js";

const api = new ApiClient("");
const session = new UiSession(api);

const canvas = document.getElementById("canvas") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const commandInput = document.getElementById("command") as HTMLInputElement;
const commandLog = document.getElementById("command-log") as HTMLElement;
const candidateList = document.getElementById("candidates") as HTMLElement;
const statusLine = document.getElementById("status") as HTMLElement;
const algorithmSelect = document.getElementById("algorithm") as HTMLSelectElement;
const budgetInput = document.getElementById("budget") as HTMLInputElement;
const costInput = document.getElementById("cost") as HTMLInputElement;
const seedInput = document.getElementById("seed") as HTMLInputElement;

let rawStroke: Point[] = [];
let drawing = false;

function setStatus(text: string, isError = false): void {
  statusLine.textContent = text;
  statusLine.className = isError ? "error" : "";
}

function redraw(highlight: Candidate | null = null): void {
  ctx.fillStyle = "#1c1c24";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  const layers: Point[][] = [session.stroke, session.programTrajectory];
  if (highlight) layers.push(highlight.trajectory);
  const view = fitView(layers, canvas.width, canvas.height);

  const paint = (points: Point[], color: string, width: number) => {
    if (points.length === 0) return;
    ctx.strokeStyle = color;
    ctx.lineWidth = width;
    ctx.stroke(new Path2D(pathOf(points, view)));
  };
  paint(session.stroke, STROKE_COLOR, 2);
  paint(session.programTrajectory, PROGRAM_COLOR, 2);
  if (highlight) paint(highlight.trajectory, CANDIDATE_COLOR, 2);
}

function renderProgram(): void {
  commandLog.textContent = session.commands.join("\n") || "(empty program)";
}

function renderCandidates(): void {
  candidateList.innerHTML = "";
  // Best (last emitted) first in the list.
  [...session.candidates].reverse().forEach((candidate) => {
    const row = document.createElement("li");
    const label = document.createElement("span");
    // Distances are shown exactly as the service reported them.
    label.textContent =
      `d=${candidate.distance}  (${candidate.commands_delta.length} edits)`;
    const accept = document.createElement("button");
    accept.textContent = "accept";
    accept.onclick = async () => {
      try {
        await session.acceptCandidate(candidate);
        renderProgram();
        renderCandidates();
        redraw();
        setStatus(`accepted candidate, distance ${candidate.distance}`);
      } catch (e) {
        setStatus(String(e), true);
      }
    };
    row.onmouseenter = () => redraw(candidate);
    row.onmouseleave = () => redraw();
    row.append(label, accept);
    candidateList.append(row);
  });
}

canvas.addEventListener("pointerdown", (e) => {
  drawing = true;
  rawStroke = [[e.offsetX, e.offsetY]];
});
canvas.addEventListener("pointermove", (e) => {
  if (!drawing) return;
  rawStroke.push([e.offsetX, e.offsetY]);
});
canvas.addEventListener("pointerup", () => {
  drawing = false;
  session.setStroke(prepareStroke(rawStroke));
  redraw();
  setStatus(`stroke captured: ${session.stroke.length} points`);
});

commandInput.addEventListener("keydown", async (e) => {
  if (e.key !== "Enter" || !commandInput.value.trim()) return;
  try {
    await session.editProgram(commandInput.value);
    commandInput.value = "";
    renderProgram();
    redraw();
    setStatus("command applied");
  } catch (err) {
    setStatus(String(err), true);
  }
});

document.getElementById("complete")!.addEventListener("click", async () => {
  session.options = {
    algorithm: algorithmSelect.value,
    budget: Number(budgetInput.value),
    cost: Number(costInput.value),
    seed: Number(seedInput.value),
  };
  try {
    setStatus("synthesizing...");
    const candidates = await session.requestCompletion();
    renderCandidates();
    const best = candidates[candidates.length - 1];
    redraw(best);
    setStatus(`done: best distance ${best.distance}`);
  } catch (err) {
    setStatus(String(err), true);
  }
});

document.getElementById("clear-stroke")!.addEventListener("click", () => {
  rawStroke = [];
  session.setStroke([]);
  redraw();
  setStatus("stroke cleared");
});

api.health()
  .then(() => setStatus("connected"))
  .catch(() => setStatus("service unreachable - start `turtle-synth serve`", true));
redraw();
renderProgram();
