import init, { solve, enumerate, plot } from "./pkg/tropspan_demo.js";

const examples = {
  span: {
    kind: "span",
    A: [[2, 0], [4, 1]],
    p: [5, 2],
    q: [1, 2],
  },
  schedule: {
    kind: "schedule",
    A: [[3, -1, "-inf"], [-2, 2, 0], [-1, "-inf", 4]],
    B: [["-inf", "-inf", -3], [2, "-inf", 0], [1, -2, "-inf"]],
    C: [["-inf", "-inf", "-inf"], [0, "-inf", -3], [-1, "-inf", "-inf"]],
    f: [7, 7, 7],
  },
};

const $ = (id) => document.getElementById(id);

function show({ text = null, svg = null, error = null }) {
  $("error").textContent = error ?? "";
  $("text").hidden = text === null;
  $("text").textContent = text ?? "";
  $("figure").innerHTML = svg ?? "";
}

function run(op) {
  try {
    show(op());
  } catch (e) {
    show({ error: String(e) });
  }
}

await init();

for (const button of document.querySelectorAll("[data-example]")) {
  button.addEventListener("click", () => {
    $("problem").value = JSON.stringify(examples[button.dataset.example], null, 2);
    show({});
  });
}

$("solve").addEventListener("click", () =>
  run(() => ({ text: solve($("problem").value, $("compact").checked) })));
$("enumerate").addEventListener("click", () =>
  run(() => ({ text: enumerate($("problem").value, $("exhaustive").checked) })));
$("plot").addEventListener("click", () =>
  run(() => ({ svg: plot($("problem").value, Number($("lo").value), Number($("hi").value)) })));

$("problem").value = JSON.stringify(examples.span, null, 2);
