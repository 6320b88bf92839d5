import init, { analyze, control, highlight } from "./pkg/lingcx_wasm.js";

const $ = (id) => document.getElementById(id);

function show(out, f) {
  out.classList.remove("error");
  try {
    const v = JSON.parse(f());
    out.textContent = JSON.stringify(v, null, 2);
    return v;
  } catch (e) {
    out.classList.add("error");
    out.textContent = String(e);
    return null;
  }
}

function escape(s) {
  return s.replace(/[&<>"]/g, (c) => ({ "&": "&amp;", "<": "&lt;", ">": "&gt;", '"': "&quot;" })[c]);
}

await init();
$("status").textContent = "Ready.";

$("a-run").onclick = () => show($("a-out"), () => analyze($("a-text").value, $("a-tree").value));

$("c-run").onclick = () =>
  show($("c-out"), () => control($("c-complex").value, $("c-simple").value, $("c-features").value));

$("h-run").onclick = () => {
  const v = show($("h-out"), () => highlight($("h-complex").value, $("h-simple").value, $("h-pred").value));
  $("h-rendered").innerHTML = v ? escape(v.rendered).replace(/\*\*(.+?)\*\*/g, "<strong>$1</strong>") : "";
};
