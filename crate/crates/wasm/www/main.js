// Page logic for the vsd playground. Build ./pkg first (see build-demo.sh).
import init, {
  predict_relation_json,
  extract_triples_json,
  diversity_scores_json,
} from "./pkg/vsd_wasm.js";

const $ = (id) => document.getElementById(id);

// --- panel 1: relation from box geometry -----------------------------------

const canvas = $("canvas");
const ctx = canvas.getContext("2d");
const HANDLE = 12;

const boxes = {
  subject: { x0: 190, y0: 200, x1: 230, y1: 240, color: "#ffb454" },
  object: { x0: 40, y0: 40, x1: 420, y1: 250, color: "#59d98e" },
};

function drawGrid() {
  ctx.strokeStyle = "#151b22";
  ctx.lineWidth = 1;
  for (let x = 0; x <= canvas.width; x += 20) {
    ctx.beginPath();
    ctx.moveTo(x, 0);
    ctx.lineTo(x, canvas.height);
    ctx.stroke();
  }
  for (let y = 0; y <= canvas.height; y += 20) {
    ctx.beginPath();
    ctx.moveTo(0, y);
    ctx.lineTo(canvas.width, y);
    ctx.stroke();
  }
}

function drawBox(name) {
  const b = boxes[name];
  ctx.strokeStyle = b.color;
  ctx.fillStyle = b.color + "22";
  ctx.lineWidth = 2;
  ctx.fillRect(b.x0, b.y0, b.x1 - b.x0, b.y1 - b.y0);
  ctx.strokeRect(b.x0, b.y0, b.x1 - b.x0, b.y1 - b.y0);
  ctx.fillStyle = b.color;
  ctx.fillRect(b.x1 - HANDLE / 2, b.y1 - HANDLE / 2, HANDLE, HANDLE);
  ctx.font = "12px ui-monospace, monospace";
  ctx.fillText(name, b.x0 + 4, b.y0 + 14);
}

function render() {
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  drawGrid();
  drawBox("object");
  drawBox("subject");
}

function updateGeo() {
  const s = boxes.subject;
  const o = boxes.object;
  const threshold = parseFloat($("threshold").value);
  const tolerance = parseInt($("tolerance").value, 10);
  $("threshold-value").textContent = threshold.toFixed(2);
  $("tolerance-value").textContent = tolerance;
  const out = JSON.parse(
    predict_relation_json(
      s.y0, s.y1, s.x0, s.x1,
      o.y0, o.y1, o.x0, o.x1,
      threshold, tolerance,
    ),
  );
  if (out.error) {
    $("geo-result").textContent = out.error;
    return;
  }
  const subjectTag = $("subject-tag").value.trim() || "subject";
  const objectTag = $("object-tag").value.trim() || "object";
  $("geo-result").innerHTML =
    `<div class="verdict">${subjectTag} <b>${out.sentence_form}</b> ${objectTag}.</div>` +
    `label: ${out.label}\nrule: ${out.rule}\n` +
    `containment ratio: ${out.containment_ratio.toFixed(3)} ` +
    `(${out.intersection_area}px&sup2; of ${out.subject_area}px&sup2;)\n` +
    `subject [y ${s.y0}..${s.y1}, x ${s.x0}..${s.x1}]  ` +
    `object [y ${o.y0}..${o.y1}, x ${o.x0}..${o.x1}]`;
  render();
}

let drag = null;

function pointerPos(event) {
  const rect = canvas.getBoundingClientRect();
  return {
    x: Math.round(((event.clientX - rect.left) / rect.width) * canvas.width),
    y: Math.round(((event.clientY - rect.top) / rect.height) * canvas.height),
  };
}

function hit(pos) {
  // Subject first: it is usually the smaller box sitting on top.
  for (const name of ["subject", "object"]) {
    const b = boxes[name];
    if (Math.abs(pos.x - b.x1) <= HANDLE && Math.abs(pos.y - b.y1) <= HANDLE) {
      return { name, mode: "resize" };
    }
    if (pos.x >= b.x0 && pos.x <= b.x1 && pos.y >= b.y0 && pos.y <= b.y1) {
      return { name, mode: "move" };
    }
  }
  return null;
}

canvas.addEventListener("pointerdown", (event) => {
  const pos = pointerPos(event);
  const target = hit(pos);
  if (target) {
    drag = { ...target, last: pos };
    canvas.setPointerCapture(event.pointerId);
  }
});

canvas.addEventListener("pointermove", (event) => {
  if (!drag) return;
  const pos = pointerPos(event);
  const dx = pos.x - drag.last.x;
  const dy = pos.y - drag.last.y;
  drag.last = pos;
  const b = boxes[drag.name];
  if (drag.mode === "move") {
    const w = b.x1 - b.x0;
    const h = b.y1 - b.y0;
    b.x0 = Math.min(Math.max(0, b.x0 + dx), canvas.width - w);
    b.y0 = Math.min(Math.max(0, b.y0 + dy), canvas.height - h);
    b.x1 = b.x0 + w;
    b.y1 = b.y0 + h;
  } else {
    b.x1 = Math.min(Math.max(b.x0, b.x1 + dx), canvas.width);
    b.y1 = Math.min(Math.max(b.y0, b.y1 + dy), canvas.height);
  }
  updateGeo();
});

canvas.addEventListener("pointerup", () => {
  drag = null;
});

// --- panel 2: proposition parser --------------------------------------------

function formatTriples(set) {
  const objects = set.objects.join(", ") || "&mdash;";
  const attributes = set.attributes.map(([o, a]) => `(${o}, ${a})`).join(", ") || "&mdash;";
  const relations = set.relations.map(([s, r, o]) => `(${s}, ${r}, ${o})`).join(", ") || "&mdash;";
  return `objects:    ${objects}\nattributes: ${attributes}\nrelations:  ${relations}`;
}

function updateParse() {
  const out = JSON.parse(extract_triples_json($("sentence").value, $("reference").value));
  let text = formatTriples(out.candidate);
  if (out.reference !== undefined) {
    text += `\n\nreference\n${formatTriples(out.reference)}`;
    text += `\n\n<span class="verdict">tuple F-score: ${out.fscore.toFixed(4)}</span>`;
  }
  $("parse-result").innerHTML = text;
}

// --- panel 3: diversity + ranking --------------------------------------------

function updateDiversity() {
  const out = JSON.parse(
    diversity_scores_json(
      $("s1").value, $("s2").value, $("s3").value,
      parseFloat($("f1").value) || 0,
      parseFloat($("bleu4").value) || 0,
      parseFloat($("spice2").value) || 0,
      parseFloat($("spice3").value) || 0,
    ),
  );
  if (out.error) {
    $("diversity-result").textContent = out.error;
    return;
  }
  const d = out.display;
  $("diversity-result").innerHTML =
    `<span class="verdict">mBLEU-4 = ${d.mbleu4} &mdash; overall = ${d.overall}</span>\n` +
    `<table><tr><th>score</th><th>value</th></tr>` +
    `<tr><td>z1 (classification)</td><td>${d.z1}</td></tr>` +
    `<tr><td>z2 = 0.4&middot;bleu4 + 0.6&middot;spice_t2</td><td>${d.z2}</td></tr>` +
    `<tr><td>z3 = 0.5&middot;(50 &minus; mbleu4) + 0.5&middot;spice_t3</td><td>${d.z3}</td></tr>` +
    `<tr><td>overall = 0.2&middot;z1 + 0.3&middot;z2 + 0.5&middot;z3</td><td>${d.overall}</td></tr>` +
    `</table>`;
}

// --- wiring -------------------------------------------------------------------

await init();
for (const id of ["threshold", "tolerance", "subject-tag", "object-tag"]) {
  $(id).addEventListener("input", updateGeo);
}
for (const id of ["sentence", "reference"]) {
  $(id).addEventListener("input", updateParse);
}
for (const id of ["s1", "s2", "s3", "f1", "bleu4", "spice2", "spice3"]) {
  $(id).addEventListener("input", updateDiversity);
}
updateGeo();
updateParse();
updateDiversity();
