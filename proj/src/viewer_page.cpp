#include "layoutlab/session.hpp"

namespace layoutlab {

// Minimal built-in client: canvas rendering, pause/edit/finish controls, a
// few parameter fields, and drag-to-translate while editing.
std::string_view viewer_page() {
  static constexpr std::string_view page = R"html(<!doctype html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>layoutlab</title>
<style>
  html, body { margin: 0; height: 100%; font: 13px system-ui, sans-serif; }
  #bar { position: fixed; left: 0; top: 0; bottom: 0; width: 210px; padding: 8px;
         box-sizing: border-box; background: #f4f4f4; border-right: 1px solid #ccc; overflow-y: auto; }
  #bar label { display: block; margin-top: 6px; }
  #bar input { width: 100%; box-sizing: border-box; }
  #bar button { margin: 2px 0; width: 100%; }
  #status { margin-top: 8px; white-space: pre-wrap; color: #444; }
  #err { color: #b00; white-space: pre-wrap; }
  canvas { position: fixed; left: 210px; top: 0; }
</style>
</head>
<body>
<div id="bar">
  <button id="pause">Pause</button>
  <button id="resume">Resume</button>
  <button id="edit">Edit mode</button>
  <button id="exit">Leave edit mode</button>
  <button id="reheat">Reheat (alpha = 1)</button>
  <div id="params"></div>
  <button id="finish">Finish</button>
  <div id="status">connecting…</div>
  <div id="err"></div>
</div>
<canvas id="view"></canvas>
<script>
"use strict";
const fields = ["repulsion_strength", "link_rest_length", "center_strength", "theta", "velocity_damping"];
const canvas = document.getElementById("view"), ctx = canvas.getContext("2d");
const statusEl = document.getElementById("status"), errEl = document.getElementById("err");
let nodes = [], edges = [], index = new Map(), xy = new Float64Array(0), seq = -1;
let phase = "", zoom = 1, pan = [0, 0], drag = null, done = false;
const ws = new WebSocket(`ws://${location.host}/ws`);
const send = (m) => { if (!done && ws.readyState === 1) ws.send(JSON.stringify(m)); };

ws.onmessage = (ev) => {
  const m = JSON.parse(ev.data);
  if (m.type === "init") {
    nodes = m.nodes; index = new Map(nodes.map((n, i) => [n.id, i]));
    edges = m.edges.map((e) => [index.get(e.source), index.get(e.target)]);
    phase = m.phase; buildParams(m.params);
  } else if (m.type === "positions") {
    if (m.seq <= seq) return;
    seq = m.seq; xy = Float64Array.from(m.xy);
    if (seq === 1) fit();
  } else if (m.type === "phase") {
    phase = m.phase;
  } else if (m.type === "error") {
    errEl.textContent = m.message;
  }
  statusEl.textContent = `phase: ${phase}\nnodes: ${nodes.length}\nsnapshot: ${seq}`;
};
ws.onclose = () => { done = true; statusEl.textContent = `session closed (${phase || "no session"})`; };

function buildParams(params) {
  const box = document.getElementById("params"); box.innerHTML = "";
  for (const key of fields) {
    const label = document.createElement("label"); label.textContent = key;
    const input = document.createElement("input"); input.type = "number"; input.step = "any";
    input.value = params[key];
    input.onchange = () => send({ type: "set_params", params: { [key]: Number(input.value) } });
    label.appendChild(input); box.appendChild(label);
  }
}

function fit() {
  let lo = [Infinity, Infinity], hi = [-Infinity, -Infinity];
  for (let i = 0; i < xy.length; i += 2) {
    lo = [Math.min(lo[0], xy[i]), Math.min(lo[1], xy[i + 1])];
    hi = [Math.max(hi[0], xy[i]), Math.max(hi[1], xy[i + 1])];
  }
  if (!isFinite(lo[0])) return;
  const w = Math.max(hi[0] - lo[0], 1), h = Math.max(hi[1] - lo[1], 1);
  zoom = Math.min(canvas.width / w, canvas.height / h) * 0.5;
  pan = [canvas.width / 2 - zoom * (lo[0] + hi[0]) / 2, canvas.height / 2 - zoom * (lo[1] + hi[1]) / 2];
}

const toScreen = (i) => [xy[2 * i] * zoom + pan[0], xy[2 * i + 1] * zoom + pan[1]];

function pick(sx, sy) {
  let best = -1, bestD = Infinity;
  for (let i = 0; i < nodes.length; i++) {
    const [x, y] = toScreen(i), d = Math.hypot(x - sx, y - sy);
    if (d <= Math.max(6, nodes[i].radius * zoom) && d < bestD) { best = i; bestD = d; }
  }
  return best;
}

canvas.onpointerdown = (e) => {
  if (phase !== "editing") return;
  const i = pick(e.offsetX, e.offsetY);
  if (i >= 0) drag = { i, x: e.offsetX, y: e.offsetY };
};
canvas.onpointermove = (e) => {
  if (!drag) return;
  const dx = (e.offsetX - drag.x) / zoom, dy = (e.offsetY - drag.y) / zoom;
  xy[2 * drag.i] += dx; xy[2 * drag.i + 1] += dy;
  send({ type: "edit_translate", ids: [nodes[drag.i].id], dx, dy });
  drag.x = e.offsetX; drag.y = e.offsetY;
};
canvas.onpointerup = () => { drag = null; };
canvas.onwheel = (e) => {
  e.preventDefault();
  const f = Math.exp(-e.deltaY * 0.001), nz = Math.min(1e3, Math.max(1e-3, zoom * f));
  pan = [e.offsetX - (e.offsetX - pan[0]) * nz / zoom, e.offsetY - (e.offsetY - pan[1]) * nz / zoom];
  zoom = nz;
};

document.getElementById("pause").onclick = () => send({ type: "pause" });
document.getElementById("resume").onclick = () => send({ type: "resume" });
document.getElementById("edit").onclick = () => send({ type: "enter_edit" });
document.getElementById("exit").onclick = () => send({ type: "exit_edit" });
document.getElementById("reheat").onclick = () => send({ type: "set_params", params: { alpha: 1 } });
document.getElementById("finish").onclick = (e) => { send({ type: "finish" }); e.target.disabled = true; };

function frame() {
  canvas.width = window.innerWidth - 210; canvas.height = window.innerHeight;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#999"; ctx.beginPath();
  for (const [s, t] of edges) {
    const a = toScreen(s), b = toScreen(t);
    ctx.moveTo(a[0], a[1]); ctx.lineTo(b[0], b[1]);
  }
  ctx.stroke();
  ctx.fillStyle = phase === "editing" ? "#c60" : "#36c";
  for (let i = 0; i < nodes.length; i++) {
    const [x, y] = toScreen(i);
    ctx.beginPath(); ctx.arc(x, y, Math.max(1.5, nodes[i].radius * zoom), 0, 2 * Math.PI); ctx.fill();
  }
  requestAnimationFrame(frame);
}
requestAnimationFrame(frame);
</script>
</body>
</html>
)html";
  return page;
}

}  // namespace layoutlab
