import init, { shockTube, weightExplorer, field2d } from "./pkg/cweno_web.js";

const $ = (id) => document.getElementById(id);

function plot(canvas, series, yRange) {
  const ctx = canvas.getContext("2d");
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  const pad = 20;
  const [lo, hi] = yRange ?? (() => {
    const all = series.flatMap((s) => Array.from(s.y));
    const min = Math.min(...all), max = Math.max(...all);
    const m = 0.05 * (max - min || 1);
    return [min - m, max + m];
  })();
  const xs = series.flatMap((s) => Array.from(s.x));
  const x0 = Math.min(...xs), x1 = Math.max(...xs);
  const sx = (x) => pad + ((x - x0) / (x1 - x0)) * (width - 2 * pad);
  const sy = (y) => height - pad - ((y - lo) / (hi - lo)) * (height - 2 * pad);
  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.fillStyle = s.color;
    ctx.beginPath();
    s.y.forEach((y, i) => {
      const px = sx(s.x[i]), py = sy(s.scale ? lo + y * (hi - lo) : y);
      if (s.dots) ctx.fillRect(px - 1.5, py - 1.5, 3, 3);
      else if (i === 0) ctx.moveTo(px, py);
      else ctx.lineTo(px, py);
    });
    if (!s.dots) ctx.stroke();
  }
}

function runShock() {
  try {
    const r = shockTube($("shock-problem").value, Number($("shock-n").value),
      Number($("shock-eps").value), 2, $("shock-ideal").checked);
    const x = r.x();
    plot($("shock-canvas"), [
      { x, y: r.exactDensity(), color: "#333" },
      { x, y: r.density(), color: "#c33", dots: true },
      { x, y: r.wCenter(), color: "#39c", scale: true },
    ]);
    $("shock-out").textContent = `L1(rho) = ${r.l1().toExponential(4)}`;
  } catch (e) {
    $("shock-out").textContent = `error: ${e.message ?? e}`;
  }
}

function runWeights() {
  const samples = 101;
  const u = ["w-um", "w-u0", "w-up"].map((id) => Number($(id).value));
  try {
    const out = weightExplorer(u[0], u[1], u[2], Number($("w-eps").value), 2, samples);
    const xs = Array.from({ length: samples }, (_, k) => -0.5 + k / (samples - 1));
    const cells = [-1, 0, 1].flatMap((c) => [c - 0.5, c + 0.5]);
    const means = u.flatMap((v) => [v, v]);
    plot($("w-canvas"), [
      { x: cells, y: means, color: "#999" },
      { x: xs, y: out.slice(3), color: "#c33" },
    ], [-1.6, 1.6]);
    $("w-out").textContent =
      `w_L = ${out[0].toFixed(6)}   w_C = ${out[1].toExponential(3)}   w_R = ${out[2].toExponential(3)}`;
  } catch (e) {
    $("w-out").textContent = `error: ${e.message ?? e}`;
  }
}

function color(v, lo, hi) {
  const t = Math.max(0, Math.min(1, (v - lo) / (hi - lo || 1)));
  return [Math.round(255 * t), Math.round(80 + 100 * (1 - Math.abs(2 * t - 1))), Math.round(255 * (1 - t))];
}

function runField() {
  try {
    const f = field2d($("f-problem").value, Number($("f-n").value), Number($("f-t").value),
      0.01, 2, $("f-ideal").checked);
    const n = f.n(), v = f.values();
    const lo = Math.min(...v), hi = Math.max(...v);
    const canvas = $("f-canvas"), ctx = canvas.getContext("2d");
    const img = ctx.createImageData(n, n);
    for (let j = 0; j < n; j++) {
      for (let i = 0; i < n; i++) {
        const [r, g, b] = color(v[j * n + i], lo, hi);
        const k = 4 * ((n - 1 - j) * n + i);
        img.data.set([r, g, b, 255], k);
      }
    }
    const tmp = new OffscreenCanvas(n, n);
    tmp.getContext("2d").putImageData(img, 0, 0);
    ctx.imageSmoothingEnabled = false;
    ctx.drawImage(tmp, 0, 0, canvas.width, canvas.height);
    const err = Number.isNaN(f.l1()) ? "no exact solution at this time" : `L1 = ${f.l1().toExponential(4)}`;
    $("f-out").textContent = `${f.steps()} steps, range [${lo.toFixed(4)}, ${hi.toFixed(4)}], ${err}`;
  } catch (e) {
    $("f-out").textContent = `error: ${e.message ?? e}`;
  }
}

await init();
$("shock-run").addEventListener("click", runShock);
for (const id of ["w-um", "w-u0", "w-up", "w-eps"]) $(id).addEventListener("input", runWeights);
$("f-run").addEventListener("click", runField);
runShock();
runWeights();
