// SMT-LIB2 solver shim: reads one script on stdin, answers on stdout.
//
// The verifier talks to solvers the classic way — `solver file-or-stdin`,
// plain sat/unsat/unknown plus a (get-model) dump. The z3-solver npm package
// ships Z3 as WASM with exactly one string-eval entry point, so this file
// adapts the two. Resolution is relative to this script so the launcher can
// run from any working directory.
const path = require('path');
const { init } = require(path.join(__dirname, 'node_modules', 'z3-solver'));

const chunks = [];
process.stdin.on('data', (d) => chunks.push(d));
process.stdin.on('end', async () => {
  const script = Buffer.concat(chunks).toString('utf8');
  try {
    const { Z3 } = await init();
    const cfg = Z3.mk_config();
    const ctx = Z3.mk_context(cfg);
    const out = await Z3.eval_smtlib2_string(ctx, script);
    process.stdout.write(out.endsWith('\n') ? out : out + '\n');
  } catch (e) {
    // Match the SMT-LIB error form so the driver reports it verbatim.
    process.stdout.write('(error "' + String(e).replace(/"/g, "'") + '")\n');
    process.exitCode = 1;
  }
  process.exit();
});
