import init, { field, isovist, lines } from "./pkg/isovist_web.js";

const SCENES = {
  "T": { bounds: [[10, 0], [20, 0], [20, 20], [30, 20], [30, 30], [0, 30], [0, 20], [10, 20]], obstacles: [] },
  "Square": { bounds: [[0, 0], [10, 0], [10, 10], [0, 10]], obstacles: [] },
  "Rectangle": { bounds: [[0, 0], [40, 0], [40, 10], [0, 10]], obstacles: [] },
  "Courtyard": {
    bounds: [[0, 0], [48, 0], [48, 32], [0, 32]],
    obstacles: [
      [[6, 6], [18, 6], [18, 14], [6, 14]],
      [[26, 4], [34, 4], [34, 12], [26, 12]],
      [[8, 20], [14, 20], [14, 28], [8, 28]],
      [[22, 18], [40, 18], [40, 24], [22, 24]],
    ],
  },
};
const MEASURES = ["area", "perimeter", "mrl", "mdl", "mean-radial", "convexity", "compactness", "drift", "clustering"];
const LINE_COLOURS = { rope: "#d62728", skeleton: "#1f77b4" };

const $ = (id) => document.getElementById(id);
const canvas = $("view");
const ctx = canvas.getContext("2d");
const state = { name: "T", grid: null, overlays: {}, view: null };

function status(text, error = false) {
  $("status").textContent = text;
  $("status").className = error ? "error" : "";
}

function sceneText() {
  return JSON.stringify(SCENES[state.name]);
}

// Fit the scene's bounding box into the canvas, y up.
function fit() {
  const pts = SCENES[state.name].bounds;
  const xs = pts.map((p) => p[0]);
  const ys = pts.map((p) => p[1]);
  const x0 = Math.min(...xs), x1 = Math.max(...xs), y0 = Math.min(...ys), y1 = Math.max(...ys);
  const pad = 16;
  const k = Math.min((canvas.width - 2 * pad) / (x1 - x0), (canvas.height - 2 * pad) / (y1 - y0));
  return {
    k,
    toPx: (x, y) => [pad + (x - x0) * k, canvas.height - pad - (y - y0) * k],
    toScene: (px, py) => [x0 + (px - pad) / k, y0 + (canvas.height - pad - py) / k],
  };
}

function ringPath(ring) {
  ctx.beginPath();
  ring.forEach(([x, y], i) => {
    const [px, py] = state.view.toPx(x, y);
    if (i === 0) ctx.moveTo(px, py);
    else ctx.lineTo(px, py);
  });
  ctx.closePath();
}

function drawField() {
  const g = state.grid;
  if (!g) return;
  const span = g.max - g.min || 1;
  const s = g.spacing * state.view.k;
  g.values.forEach((v, i) => {
    if (v === null) return;
    const col = i % g.n_cols, row = Math.floor(i / g.n_cols);
    const shade = Math.round(40 + 215 * (v - g.min) / span);
    ctx.fillStyle = `rgb(${shade},${shade},${shade})`;
    const [px, py] = state.view.toPx(g.origin[0] + col * g.spacing, g.origin[1] + (row + 1) * g.spacing);
    ctx.fillRect(px, py, Math.ceil(s), Math.ceil(s));
  });
}

function drawLines(kind, collection) {
  ctx.strokeStyle = LINE_COLOURS[kind];
  ctx.lineWidth = 2;
  for (const f of collection.features) {
    ctx.beginPath();
    f.geometry.coordinates.forEach(([x, y], i) => {
      const [px, py] = state.view.toPx(x, y);
      if (i === 0) ctx.moveTo(px, py);
      else ctx.lineTo(px, py);
    });
    ctx.stroke();
    if (kind === "rope") {
      const [gx, gy] = state.view.toPx(f.properties.generator_x, f.properties.generator_y);
      ctx.fillStyle = "#000";
      ctx.beginPath();
      ctx.arc(gx, gy, 3, 0, 2 * Math.PI);
      ctx.fill();
    }
  }
}

function redraw(iso = null) {
  const scene = SCENES[state.name];
  state.view = fit();
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  drawField();
  for (const ob of scene.obstacles) {
    ringPath(ob);
    ctx.fillStyle = "#333";
    ctx.fill();
  }
  ringPath(scene.bounds);
  ctx.strokeStyle = "#000";
  ctx.lineWidth = 1.5;
  ctx.stroke();
  for (const [kind, collection] of Object.entries(state.overlays)) drawLines(kind, collection);
  if (iso) {
    ringPath(iso.polygon);
    ctx.fillStyle = "rgba(255, 190, 0, 0.35)";
    ctx.fill();
    ctx.strokeStyle = "#c80";
    ctx.lineWidth = 1;
    ctx.stroke();
    const [a, b] = iso.measures.mdl_chord;
    ctx.beginPath();
    ctx.moveTo(...state.view.toPx(a.x, a.y));
    ctx.lineTo(...state.view.toPx(b.x, b.y));
    ctx.strokeStyle = "#a00";
    ctx.stroke();
  }
}

function numbers() {
  return { spacing: Number($("spacing").value), rays: Number($("rays").value) };
}

function run(label, fn) {
  status(`${label}…`);
  // let the status paint before the synchronous computation
  setTimeout(() => {
    const t0 = performance.now();
    try {
      fn();
      status(`${label}: ${(performance.now() - t0).toFixed(0)} ms`);
    } catch (e) {
      status(String(e.message ?? e), true);
    }
  }, 10);
}

function showMeasures(iso) {
  const m = iso.measures;
  const rows = [
    ["viewpoint", iso.viewpoint.map((v) => v.toFixed(2)).join(", ")],
    ["area", m.area.toFixed(3)],
    ["exact area", iso.exact_area.toFixed(3)],
    ["perimeter", m.perimeter.toFixed(3)],
    ["MRL", m.mrl.toFixed(4)],
    ["MDL", m.mdl.toFixed(4)],
    ["mean radial", m.mean_radial.toFixed(4)],
    ["convexity", m.convexity.toFixed(4)],
    ["compactness", m.compactness.toFixed(4)],
    ["drift", m.drift.toFixed(4)],
  ];
  $("measures").innerHTML = rows.map(([k, v]) => `<tr><td>${k}</td><td>${v}</td></tr>`).join("");
}

function setup() {
  for (const name of Object.keys(SCENES)) $("scene").add(new Option(name, name));
  for (const m of MEASURES) $("measure").add(new Option(m, m, m === "area", m === "area"));
  $("scene").addEventListener("change", () => {
    state.name = $("scene").value;
    state.grid = null;
    state.overlays = {};
    redraw();
  });
  $("draw").addEventListener("click", () =>
    run(`${$("measure").value} field`, () => {
      const { spacing, rays } = numbers();
      state.grid = JSON.parse(field(sceneText(), $("measure").value, spacing, rays));
      redraw();
    }));
  for (const kind of ["rope", "skeleton"]) {
    $(kind).addEventListener("click", () =>
      run(kind, () => {
        const { spacing, rays } = numbers();
        state.overlays[kind] = JSON.parse(lines(sceneText(), kind, spacing, rays));
        redraw();
      }));
  }
  $("clear").addEventListener("click", () => {
    state.overlays = {};
    redraw();
  });
  canvas.addEventListener("click", (ev) => {
    const r = canvas.getBoundingClientRect();
    const [x, y] = state.view.toScene(ev.clientX - r.left, ev.clientY - r.top);
    run("isovist", () => {
      const iso = JSON.parse(isovist(sceneText(), x, y, 7200));
      showMeasures(iso);
      redraw(iso);
    });
  });
  redraw();
}

await init();
setup();
