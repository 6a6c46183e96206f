#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ladver/report.hpp"

namespace ladver {

namespace {

// Grid geometry. One element per cell; parallel branches stack in rows.
constexpr int kCellW = 120;
constexpr int kRowH = 80;
constexpr int kLeftRail = 26;
constexpr int kPadTop = 28;
constexpr int kPadBottom = 26;
constexpr int kRailGap = 18;

std::string xesc(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

const char* col(bool active) { return active ? kColorActive : kColorInactive; }

/// What the trace tells us about one step: whether the scan reached it, the
/// contact's own truth value, the wire feeding/leaving it, and the word
/// values to print above the element (state after the step's writes).
struct Paint {
  bool executed = false;
  bool conduct = false;
  bool wire = false;
  bool fault = false;
  std::string label;
};

std::vector<Paint> paint_steps(const Program& p, const Trace& trace) {
  std::vector<Paint> paints(p.steps().size());
  DeviceState st = trace.init.state;
  for (const TraceStep& ts : trace.steps) {
    const auto idx = static_cast<std::size_t>(ts.location.step_index);
    if (idx >= paints.size()) continue;
    const Step& s = p.steps()[idx];
    Paint& pt = paints[idx];
    pt.executed = true;
    pt.wire = ts.acc_active;
    switch (s.op) {
      case StepOp::Ld:
      case StepOp::And:
      case StepOp::Or:
        pt.conduct = st.bit(s.operands[0].device_ref());
        break;
      case StepOp::Ldi:
      case StepOp::Ani:
      case StepOp::Ori:
        pt.conduct = !st.bit(s.operands[0].device_ref());
        break;
      case StepOp::CmpLd:
      case StepOp::CmpAnd:
      case StepOp::CmpOr:
        pt.conduct = eval_compare(s.rel, operand_value(s.operands[0], st),
                                  operand_value(s.operands[1], st));
        break;
      default:
        break;
    }
    for (const Write& w : ts.writes) {
      if (std::holds_alternative<bool>(w.value)) {
        st.set_bit(w.device, std::get<bool>(w.value));
      } else {
        st.set_word(w.device, std::get<Word16>(w.value));
      }
    }
    if (trace.fault && trace.fault->location == ts.location) pt.fault = true;
    std::vector<Device> seen;
    for (const Operand& op : s.operands) {
      if (!op.is_device() || op.device_ref().kind != DeviceKind::D) continue;
      const Device& d = op.device_ref();
      if (std::find(seen.begin(), seen.end(), d) != seen.end()) continue;
      seen.push_back(d);
      if (!pt.label.empty()) pt.label += "  ";
      pt.label += to_string(d) + "=" + std::to_string(st.word(d).value());
    }
  }
  return paints;
}

/// Series-parallel decomposition of one rung's logic, recovered from the IL
/// stack discipline: AND-family appends in series, OR-family wraps in
/// parallel, ANB/ORB combine whole blocks.
struct Net {
  enum Kind { Leaf, Series, Par };
  Kind kind = Leaf;
  int step = -1;  // Leaf only
  std::vector<Net> kids;
  int cols = 1, rows = 1;
};

Net leaf_net(int step) {
  Net n;
  n.step = step;
  return n;
}

void resize_net(Net& n) {
  if (n.kind == Net::Leaf) {
    n.cols = n.rows = 1;
    return;
  }
  n.cols = n.rows = 0;
  for (const Net& k : n.kids) {
    if (n.kind == Net::Series) {
      n.cols += k.cols;
      n.rows = std::max(n.rows, k.rows);
    } else {
      n.cols = std::max(n.cols, k.cols);
      n.rows += k.rows;
    }
  }
}

Net combine_net(Net::Kind kind, Net a, Net b) {
  if (a.kind == kind) {
    a.kids.push_back(std::move(b));
    resize_net(a);
    return a;
  }
  Net n;
  n.kind = kind;
  n.kids.push_back(std::move(a));
  n.kids.push_back(std::move(b));
  resize_net(n);
  return n;
}

struct RungNet {
  std::optional<Net> net;
  std::vector<int> actions;  // step indices, program order
};

RungNet build_rung_net(const Program& p, const Rung& r) {
  RungNet out;
  std::vector<Net> stk;
  for (int i = r.first; i < r.end; ++i) {
    const StepOp op = p.steps()[static_cast<std::size_t>(i)].op;
    if (is_load_op(op)) {
      stk.push_back(leaf_net(i));
    } else if (is_combine_op(op)) {
      const bool parallel =
          op == StepOp::Or || op == StepOp::Ori || op == StepOp::CmpOr;
      if (stk.empty()) {
        stk.push_back(leaf_net(i));
      } else {
        Net top = std::move(stk.back());
        stk.pop_back();
        stk.push_back(combine_net(parallel ? Net::Par : Net::Series,
                                  std::move(top), leaf_net(i)));
      }
    } else if (is_block_op(op)) {
      if (stk.size() >= 2) {
        Net b = std::move(stk.back());
        stk.pop_back();
        Net a = std::move(stk.back());
        stk.pop_back();
        stk.push_back(combine_net(op == StepOp::Orb ? Net::Par : Net::Series,
                                  std::move(a), std::move(b)));
      }
    } else {
      out.actions.push_back(i);
    }
  }
  if (!stk.empty()) out.net = std::move(stk.back());
  return out;
}

struct Ctx {
  std::ostringstream svg;
  const Program* p = nullptr;
  const std::vector<Paint>* paints = nullptr;
  int y_base = 0;  // centerline of the current rung's row 0
};

int cell_x(int cxi) { return kLeftRail + cxi * kCellW; }
int cy_of(const Ctx& c, int row) { return c.y_base + row * kRowH; }

void hwire(Ctx& c, int x1, int x2, int y, bool active) {
  c.svg << "<line x1=\"" << x1 << "\" y1=\"" << y << "\" x2=\"" << x2
        << "\" y2=\"" << y << "\" stroke=\"" << col(active)
        << "\" stroke-width=\"2\"/>\n";
}

void vwire(Ctx& c, int x, int y1, int y2, bool active) {
  c.svg << "<line x1=\"" << x << "\" y1=\"" << y1 << "\" x2=\"" << x
        << "\" y2=\"" << y2 << "\" stroke=\"" << col(active)
        << "\" stroke-width=\"2\"/>\n";
}

void dot(Ctx& c, int x, int y, bool active) {
  c.svg << "<circle cx=\"" << x << "\" cy=\"" << y
        << "\" r=\"3\" fill=\"" << col(active) << "\"/>\n";
}

void text_at(Ctx& c, int x, int y, const char* fill, int size,
             const std::string& escaped, bool anchor_start = false) {
  c.svg << "<text x=\"" << x << "\" y=\"" << y << "\" fill=\"" << fill
        << "\" font-size=\"" << size << "\"";
  if (anchor_start) c.svg << " text-anchor=\"start\"";
  c.svg << ">" << escaped << "</text>\n";
}

// One contact or comparison contact; returns the activity after the element.
bool draw_leaf(Ctx& c, int step, int cxi, int row, bool in) {
  const Step& s = c.p->steps()[static_cast<std::size_t>(step)];
  const Paint& pt = (*c.paints)[static_cast<std::size_t>(step)];
  const int xl = cell_x(cxi);
  const int xr = cell_x(cxi + 1);
  const int cx = xl + kCellW / 2;
  const int cy = cy_of(c, row);
  const bool conduct = pt.executed && pt.conduct;
  const bool out = pt.executed && in && pt.conduct;

  if (s.op == StepOp::CmpLd || s.op == StepOp::CmpAnd ||
      s.op == StepOp::CmpOr) {
    hwire(c, xl, cx - 45, cy, pt.executed && in);
    c.svg << "<rect x=\"" << (cx - 45) << "\" y=\"" << (cy - 13)
          << "\" width=\"90\" height=\"26\" rx=\"3\" fill=\"none\" stroke=\""
          << col(conduct) << "\" stroke-width=\"2\"/>\n";
    text_at(c, cx, cy + 4, col(conduct), 10,
            xesc(to_string(s.operands[0]) + to_string(s.rel) +
                 to_string(s.operands[1])));
    if (!pt.label.empty()) text_at(c, cx, cy - 22, "#212121", 11, xesc(pt.label));
    hwire(c, cx + 45, xr, cy, out);
    return out;
  }

  hwire(c, xl, cx - 9, cy, pt.executed && in);
  c.svg << "<line x1=\"" << (cx - 9) << "\" y1=\"" << (cy - 13) << "\" x2=\""
        << (cx - 9) << "\" y2=\"" << (cy + 13) << "\" stroke=\"" << col(conduct)
        << "\" stroke-width=\"2\"/>\n";
  c.svg << "<line x1=\"" << (cx + 9) << "\" y1=\"" << (cy - 13) << "\" x2=\""
        << (cx + 9) << "\" y2=\"" << (cy + 13) << "\" stroke=\"" << col(conduct)
        << "\" stroke-width=\"2\"/>\n";
  if (s.op == StepOp::Ldi || s.op == StepOp::Ani || s.op == StepOp::Ori) {
    c.svg << "<line x1=\"" << (cx - 7) << "\" y1=\"" << (cy + 13) << "\" x2=\""
          << (cx + 7) << "\" y2=\"" << (cy - 13) << "\" stroke=\""
          << col(conduct) << "\" stroke-width=\"2\"/>\n";
  }
  text_at(c, cx, cy - 22, "#212121", 11,
          xesc(to_string(s.operands[0].device_ref())));
  hwire(c, cx + 9, xr, cy, out);
  return out;
}

bool draw_net(Ctx& c, const Net& n, int cxi, int row, bool in) {
  switch (n.kind) {
    case Net::Leaf:
      return draw_leaf(c, n.step, cxi, row, in);
    case Net::Series: {
      bool cur = in;
      int x = cxi;
      for (const Net& kid : n.kids) {
        cur = draw_net(c, kid, x, row, cur);
        x += kid.cols;
      }
      return cur;
    }
    case Net::Par: {
      const int xl = cell_x(cxi);
      const int xr = cell_x(cxi + n.cols);
      bool out_any = false;
      int r = row;
      int last_row = row;
      for (const Net& kid : n.kids) {
        const bool ob = draw_net(c, kid, cxi, r, in);
        if (kid.cols < n.cols) {
          hwire(c, cell_x(cxi + kid.cols), xr, cy_of(c, r), ob);
        }
        out_any = out_any || ob;
        last_row = r;
        r += kid.rows;
      }
      vwire(c, xl, cy_of(c, row), cy_of(c, last_row), in);
      vwire(c, xr, cy_of(c, row), cy_of(c, last_row), out_any);
      int rr = row;
      for (const Net& kid : n.kids) {
        dot(c, xl, cy_of(c, rr), in);
        dot(c, xr, cy_of(c, rr), out_any);
        rr += kid.rows;
      }
      return out_any;
    }
  }
  return in;
}

// One coil or call box; returns the pass-through wire activity.
bool draw_action(Ctx& c, int step, int cxi) {
  const Step& s = c.p->steps()[static_cast<std::size_t>(step)];
  const Paint& pt = (*c.paints)[static_cast<std::size_t>(step)];
  const int xl = cell_x(cxi);
  const int xr = cell_x(cxi + 1);
  const int cx = xl + kCellW / 2;
  const int cy = cy_of(c, 0);
  const bool on = pt.executed && pt.wire;

  if (s.op == StepOp::Call) {
    const char* stroke = pt.fault ? kColorFault : col(on);
    hwire(c, xl, cx - 50, cy, on);
    c.svg << "<rect x=\"" << (cx - 50) << "\" y=\"" << (cy - 15)
          << "\" width=\"100\" height=\"30\" rx=\"3\" fill=\""
          << (pt.fault ? kColorFault : "none") << "\" stroke=\"" << stroke
          << "\" stroke-width=\"2\"/>\n";
    text_at(c, cx, cy + 4, pt.fault ? "#FFFFFF" : col(on), 10,
            xesc(step_text(s)));
    if (!pt.label.empty()) text_at(c, cx, cy - 22, "#212121", 11, xesc(pt.label));
    hwire(c, cx + 50, xr, cy, on);
    return on;
  }

  hwire(c, xl, cx - 12, cy, on);
  c.svg << "<circle cx=\"" << cx << "\" cy=\"" << cy
        << "\" r=\"12\" fill=\"none\" stroke=\"" << col(on)
        << "\" stroke-width=\"2\"/>\n";
  if (s.op == StepOp::Set) text_at(c, cx, cy + 4, col(on), 10, "S");
  if (s.op == StepOp::Rst) text_at(c, cx, cy + 4, col(on), 10, "R");
  text_at(c, cx, cy - 22, "#212121", 11,
          xesc(to_string(s.operands[0].device_ref())));
  hwire(c, cx + 12, xr, cy, on);
  return on;
}

}  // namespace

std::string render_svg(const Program& p, const Trace& trace) {
  const std::vector<Paint> paints = paint_steps(p, trace);

  std::vector<RungNet> nets;
  nets.reserve(p.rungs().size());
  int cols_max = 1;
  int total_rows = 0;
  for (const Rung& r : p.rungs()) {
    RungNet rn = build_rung_net(p, r);
    const int cols = (rn.net ? rn.net->cols : 0) +
                     static_cast<int>(rn.actions.size());
    cols_max = std::max(cols_max, cols);
    total_rows += rn.net ? rn.net->rows : 1;
    nets.push_back(std::move(rn));
  }

  const int rail_x = kLeftRail + cols_max * kCellW + kRailGap;
  const int width = rail_x + 26;
  const int height = kPadTop + total_rows * kRowH + kPadBottom +
                     (trace.fault ? 18 : 0);

  Ctx c;
  c.p = &p;
  c.paints = &paints;
  c.svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
        << height << "\">\n";
  c.svg << "<rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"#FFFFFF\"/>\n";
  c.svg << "<g font-family=\"DejaVu Sans Mono, monospace\" font-size=\"11\" "
           "text-anchor=\"middle\">\n";

  const int rails_y2 = kPadTop + std::max(total_rows, 1) * kRowH;
  c.svg << "<line x1=\"" << kLeftRail << "\" y1=\"" << kPadTop << "\" x2=\""
        << kLeftRail << "\" y2=\"" << rails_y2
        << "\" stroke=\"#424242\" stroke-width=\"3\"/>\n";
  c.svg << "<line x1=\"" << rail_x << "\" y1=\"" << kPadTop << "\" x2=\""
        << rail_x << "\" y2=\"" << rails_y2
        << "\" stroke=\"#424242\" stroke-width=\"3\"/>\n";

  int row_off = 0;
  for (std::size_t ri = 0; ri < nets.size(); ++ri) {
    const RungNet& rn = nets[ri];
    c.y_base = kPadTop + row_off * kRowH + kRowH / 2;
    const int first_step = p.rungs()[ri].first;
    const bool in = paints[static_cast<std::size_t>(first_step)].executed;
    bool cur = in;
    int x = 0;
    if (rn.net) {
      cur = draw_net(c, *rn.net, 0, 0, in);
      x = rn.net->cols;
    }
    for (const int si : rn.actions) {
      cur = draw_action(c, si, x);
      ++x;
    }
    hwire(c, cell_x(x), rail_x, cy_of(c, 0), cur);
    row_off += rn.net ? rn.net->rows : 1;
  }

  if (trace.fault) {
    text_at(c, kLeftRail, height - 10, kColorFault, 11,
            xesc("FAULT at " + to_string(trace.fault->location) + ": " +
                 trace.fault->reason),
            /*anchor_start=*/true);
  }

  c.svg << "</g>\n</svg>\n";
  return c.svg.str();
}

std::string render_svg(const Program& p, const Scenario& s) {
  return render_svg(p, s.trace);
}

std::string render_html(const Program& p, const Scenario& s,
                        const std::string& file_label) {
  std::ostringstream os;
  os << "<!doctype html>\n<html lang=\"en\">\n<head>\n"
        "<meta charset=\"utf-8\">\n<title>"
     << xesc(std::string(kToolName) + ": " + s.vc.instr + " error in " +
             file_label)
     << "</title>\n<style>\n"
        "body{font-family:sans-serif;margin:2em;color:#212121;"
        "background:#FAFAFA}\n"
        "h1{font-size:1.3em}\nh2{font-size:1.05em;margin-top:1.4em}\n"
        ".reason{color:" << kColorFault << ";font-weight:bold}\n"
        ".ladder{background:#FFFFFF;border:1px solid #E0E0E0;padding:8px;"
        "overflow-x:auto}\n"
        "pre{background:#F5F5F5;border:1px solid #E0E0E0;padding:0.8em;"
        "overflow-x:auto}\n"
        "</style>\n</head>\n<body>\n";
  os << "<h1>" << xesc(std::string(kToolName)) << ": runtime error scenario</h1>\n";
  os << "<p>file <code>" << xesc(file_label) << "</code>, " << xesc(s.vc.instr)
     << " at " << xesc(to_string(s.vc.location)) << "</p>\n";
  os << "<p class=\"reason\">" << xesc(s.vc.reason.text) << "</p>\n";
  os << "<div class=\"ladder\">\n" << render_svg(p, s.trace) << "</div>\n";
  os << "<h2>initial values (scan start)</h2>\n<pre>"
     << xesc(render_init_lines(s.trace.init, "")) << "</pre>\n";
  os << "<h2>trace</h2>\n<pre>"
     << xesc(render_trace_lines(p, s.trace, "")) << "</pre>\n";
  os << "</body>\n</html>\n";
  return os.str();
}

}  // namespace ladver
