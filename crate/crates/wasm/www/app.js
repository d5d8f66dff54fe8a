import init, { Playground } from './pkg/ramsey_wasm.js';

const $ = (id) => document.getElementById(id);
const SVG = 'http://www.w3.org/2000/svg';
const SIZE = 320;

let pg;
let view;
let selected = null;

function call(json) {
  const v = JSON.parse(json);
  $('err').textContent = v && v.error ? v.error : '';
  if (v && v.error) {
    $('boards').classList.remove('shake');
    void $('boards').offsetWidth;
    $('boards').classList.add('shake');
    return null;
  }
  return v;
}

function el(tag, attrs, parent) {
  const e = document.createElementNS(SVG, tag);
  for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
  parent.appendChild(e);
  return e;
}

function pos(i, n) {
  const t = (2 * Math.PI * i) / n - Math.PI / 2;
  const r = SIZE / 2 - 24;
  return [SIZE / 2 + r * Math.cos(t), SIZE / 2 + r * Math.sin(t)];
}

// Parses "g:1:0-1" or "h:0-1-2-3".
function parseEdge(s) {
  const [k, ...rest] = s.split(':');
  if (k === 'g') return { copy: +rest[0], vs: rest[1].split('-').map(Number) };
  return { copy: 0, vs: rest[0].split('-').map(Number) };
}

function centrePair() {
  return $('pair').value.split(',').map(Number);
}

// Edges of one drawing: the copy for the graph board, the projection
// through the chosen centre pair for the hypergraph board.
function project(edgeText, copy) {
  const e = parseEdge(edgeText);
  if (view.game === 'graph') return e.copy === copy ? e.vs : null;
  const [x, y] = centrePair();
  if (!e.vs.includes(x) || !e.vs.includes(y)) return null;
  return e.vs.filter((v) => v !== x && v !== y);
}

function roleName(copy, i) {
  const key = view.game === 'graph' ? `${copy}:${i}` : `${i}`;
  const names = view.labels.filter(([, v]) => v === key).map(([n]) => n);
  names.sort((a, b) => a.length - b.length || a.localeCompare(b));
  return names[0] || '';
}

function drawBoard(copy, title) {
  const box = document.createElement('div');
  box.innerHTML = `<div>${title}</div>`;
  const svg = el('svg', { width: SIZE, height: SIZE }, box);
  const n = view.n;
  const base = view.potential_base || [];
  for (const c of view.claims) {
    const p = project(c.edge, copy);
    if (!p) continue;
    const [a, b] = [pos(p[0], n), pos(p[1], n)];
    const isBase = view.game === 'graph' && base.includes(`${copy}:${p[0]}`) && base.includes(`${copy}:${p[1]}`);
    el('line', { x1: a[0], y1: a[1], x2: b[0], y2: b[1], class: `e ${c.owner}${isBase ? ' base' : ''}` }, svg);
  }
  for (const t of view.threats) {
    const p = project(t.edge, copy);
    if (!p) continue;
    const [a, b] = [pos(p[0], n), pos(p[1], n)];
    el('line', { x1: a[0], y1: a[1], x2: b[0], y2: b[1], class: 'e threat' }, svg);
  }
  const skip = view.game === 'hyper' ? centrePair() : [];
  for (let i = 0; i < n; i++) {
    if (skip.includes(i)) continue;
    const [x, y] = pos(i, n);
    const role = roleName(copy, i);
    const sel = selected && selected.copy === copy && selected.i === i;
    const c = el('circle', { cx: x, cy: y, r: 9, class: `v${sel ? ' sel' : ''}${role ? ' role' : ''}` }, svg);
    c.addEventListener('click', () => clickVertex(copy, i));
    el('text', { x, y: y + 3, class: 'vl' }, svg).textContent = role || i;
  }
  $('boards').appendChild(box);
}

function render() {
  $('boards').innerHTML = '';
  if (view.game === 'graph') {
    drawBoard(1, 'copy 1');
    drawBoard(2, 'copy 2');
  } else {
    const [x, y] = centrePair();
    drawBoard(0, `hyperedges through ${x} and ${y}`);
  }
  $('case').textContent = view.case || '-';
  $('ledger').textContent = view.ledger ? `k=${view.ledger.k} l=${view.ledger.l}` : '-';
  $('base').textContent = view.potential_base ? view.potential_base.join(' ') : '-';
  $('threats').textContent = view.threats.map((t) => `${t.player} ${t.edge}`).join(', ') || '-';
  $('banner').textContent = view.winner ? `${view.winner} wins` : '';
  const done = view.finished || view.p1_stopped;
  for (const id of ['play', 'stop', 'edge']) $(id).disabled = done;
  const lines = call(pg.explain());
  $('log').textContent = lines ? lines.join('\n') : '';
}

function submit(mv) {
  selected = null;
  if (!call(pg.play(mv))) return render();
  view = call(pg.state());
  render();
}

function clickVertex(copy, i) {
  if (view.finished) return;
  if (!selected || selected.copy !== copy) {
    selected = { copy, i };
    return render();
  }
  if (selected.i === i) {
    selected = null;
    return render();
  }
  const [a, b] = [selected.i, i].sort((p, q) => p - q);
  if (view.game === 'graph') return submit(`g:${copy}:${a}-${b}`);
  const vs = [...centrePair(), a, b].sort((p, q) => p - q);
  submit(`h:${vs.join('-')}`);
}

function fillPairs(n) {
  const sel = $('pair');
  sel.innerHTML = '';
  for (let x = 0; x < n; x++)
    for (let y = x + 1; y < n; y++) sel.add(new Option(`${x}, ${y}`, `${x},${y}`));
}

function newGame() {
  const kind = $('kind').value;
  const n = Number($('n').value);
  const v = call(pg.start(kind, n));
  if (!v) return;
  view = v;
  selected = null;
  $('pairbox').hidden = kind !== 'hyper';
  if (kind === 'hyper') fillPairs(n);
  render();
}

async function main() {
  await init();
  pg = new Playground();
  $('new').addEventListener('click', newGame);
  $('play').addEventListener('click', () => submit($('edge').value.trim()));
  $('edge').addEventListener('keydown', (e) => e.key === 'Enter' && submit($('edge').value.trim()));
  $('stop').addEventListener('click', () => submit('stop'));
  $('pair').addEventListener('change', () => { selected = null; render(); });
  newGame();
}

main();
