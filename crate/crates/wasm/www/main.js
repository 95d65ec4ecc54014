import init, { largest_agraded, has_monomial, staircase } from "./pkg/monideal_wasm.js";

const EXAMPLES = {
  circle: "vars x y\nfield QQ\npoly x^2 + y^2\npoly x*y\n",
  line: "vars x y\nfield QQ\npoly x + y\ngrading 1 2\n1 -1\n",
  twisted: "vars x y z\nfield QQ\npoly x*z - y^2\npoly x^3 + y*z\ngrading 1 3\n1 1 1\n",
  mixed: "vars x y\nfield Fp 32003\npoly x^2*y + x + 1\npoly y^2 - x*y\ngrading 1 2\n1 -1\n",
};

const $ = (id) => document.getElementById(id);

function problem() {
  return $("problem").value;
}

function show(text, isError = false) {
  const out = $("output");
  out.textContent = text;
  out.classList.toggle("error", isError);
}

function call(fn, ...args) {
  const result = JSON.parse(fn(...args));
  if (result.error) {
    show(result.error, true);
    return null;
  }
  return result;
}

function runAgraded() {
  const mode = document.querySelector("input[name=mode]:checked").value;
  const r = call(largest_agraded, problem(), mode);
  if (!r) return;
  show(r.basis.length ? r.basis.join("\n") : "0  (the zero ideal)");
  $("report").textContent = r.report;
}

function runHas() {
  const r = call(has_monomial, problem());
  if (r) show(r.contains_monomial ? "yes: the ideal contains a monomial" : "no monomials in this ideal");
}

function runStaircase() {
  const degree = Number($("degree").value);
  const r = call(staircase, problem(), degree);
  if (!r) return;
  const gens = r.generators.map((e) => monomialText(r.variables, e));
  show(`minimal monomial generators: ${gens.length ? gens.join(", ") : "none"}\n` +
       `monomials of degree ≤ ${degree} in the ideal: ${r.monomials.length}`);
  draw(r);
}

function monomialText(vars, exps) {
  const parts = exps.flatMap((e, i) => (e === 0 ? [] : [e === 1 ? vars[i] : `${vars[i]}^${e}`]));
  return parts.length ? parts.join("*") : "1";
}

function draw(r) {
  const canvas = $("plot");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (r.variables.length !== 2) {
    $("plot-note").textContent = "The staircase picture is drawn for rings in two variables.";
    return;
  }
  $("plot-note").textContent =
    `Exponent of ${r.variables[0]} to the right, ${r.variables[1]} upward. ` +
    "Filled cells are monomials in the ideal; outlined cells are its minimal generators.";
  const n = r.degree + 1;
  const cell = Math.floor((canvas.width - 30) / n);
  const x0 = 25;
  const y0 = canvas.height - 25;
  const inIdeal = new Set(r.monomials.map(([a, b]) => `${a},${b}`));
  ctx.font = "11px system-ui";
  for (let a = 0; a < n; a++) {
    for (let b = 0; a + b < n; b++) {
      const x = x0 + a * cell;
      const y = y0 - (b + 1) * cell;
      ctx.fillStyle = inIdeal.has(`${a},${b}`) ? "#4a78b5" : "#eee";
      ctx.fillRect(x + 1, y + 1, cell - 2, cell - 2);
    }
  }
  ctx.strokeStyle = "#c33";
  ctx.lineWidth = 2;
  for (const [a, b] of r.generators) {
    if (a + b < n) ctx.strokeRect(x0 + a * cell + 1, y0 - (b + 1) * cell + 1, cell - 2, cell - 2);
  }
  ctx.fillStyle = "#222";
  for (let k = 0; k < n; k++) {
    ctx.fillText(String(k), x0 + k * cell + cell / 2 - 3, y0 + 14);
    ctx.fillText(String(k), 8, y0 - k * cell - cell / 2 + 4);
  }
}

await init();
$("run-agraded").addEventListener("click", runAgraded);
$("run-has").addEventListener("click", runHas);
$("run-staircase").addEventListener("click", runStaircase);
for (const button of document.querySelectorAll("[data-example]")) {
  button.addEventListener("click", () => {
    $("problem").value = EXAMPLES[button.dataset.example];
  });
}
runStaircase();
