#include "blocksight/vm/asm_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "blocksight/vm/validate.hpp"

namespace blocksight::vm {

namespace {

struct PendingTarget {
    int block;
    int offset;
    std::string label;
    int line;
};

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw AsmError("line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokenize(const std::string& s) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            if (!cur.empty()) tokens.push_back(cur), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    return tokens;
}

int parse_register(const std::string& tok, int line) {
    if (tok.size() < 2 || (tok[0] != 'r' && tok[0] != 'R')) fail(line, "expected register, got '" + tok + "'");
    int idx = 0;
    for (std::size_t i = 1; i < tok.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(tok[i])))
            fail(line, "expected register, got '" + tok + "'");
        idx = idx * 10 + (tok[i] - '0');
    }
    if (idx >= kNumRegisters) fail(line, "register index out of range: " + tok);
    return idx;
}

std::int64_t parse_int(const std::string& tok, int line) {
    try {
        std::size_t pos = 0;
        std::int64_t v = std::stoll(tok, &pos, 0);
        if (pos != tok.size()) fail(line, "bad integer '" + tok + "'");
        return v;
    } catch (const AsmError&) {
        throw;
    } catch (const std::exception&) {
        fail(line, "bad integer '" + tok + "'");
    }
}

// [rN], [rN+d], [rN-d], or a bare absolute address.
MemRef parse_memref(const std::string& tok, int line) {
    MemRef m;
    if (!tok.empty() && tok.front() == '[') {
        if (tok.back() != ']') fail(line, "unterminated memory operand '" + tok + "'");
        std::string inner = tok.substr(1, tok.size() - 2);
        std::size_t sep = inner.find_first_of("+-", 1);
        m.reg_mode = true;
        if (sep == std::string::npos) {
            m.base = parse_register(inner, line);
            m.disp = 0;
        } else {
            m.base = parse_register(inner.substr(0, sep), line);
            std::int64_t d = parse_int(inner.substr(sep + 1), line);
            m.disp = inner[sep] == '-' ? -d : d;
        }
    } else {
        m.reg_mode = false;
        m.disp = parse_int(tok, line);
    }
    return m;
}

Cond parse_cond(const std::string& tok, int line) {
    const std::string c = upper(tok);
    if (c == "EQ") return Cond::Eq;
    if (c == "NE") return Cond::Ne;
    if (c == "LT") return Cond::Lt;
    if (c == "LE") return Cond::Le;
    if (c == "GT") return Cond::Gt;
    if (c == "GE") return Cond::Ge;
    fail(line, "unknown condition '" + tok + "'");
}

void expect_operands(const std::vector<std::string>& toks, std::size_t n, int line) {
    if (toks.size() - 1 != n)
        fail(line, std::string(toks[0]) + " expects " + std::to_string(n) + " operand(s)");
}

}  // namespace

Program parse_asm(const std::string& text) {
    Program program;
    std::map<std::string, int> labels;
    std::vector<PendingTarget> pending;
    std::string entry_label;
    int entry_line = 0;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::vector<std::string> toks = tokenize(raw);
        if (toks.empty()) continue;

        if (toks[0][0] == '.') {
            const std::string directive = toks[0];
            if (directive == ".name") {
                std::string name;
                for (std::size_t i = 1; i < toks.size(); ++i) {
                    if (i > 1) name += ' ';
                    name += toks[i];
                }
                program.meta.name = name;
            } else if (directive == ".version") {
                if (toks.size() != 2) fail(line_no, ".version expects one token");
                program.meta.version = toks[1];
            } else if (directive == ".memory") {
                if (toks.size() != 2) fail(line_no, ".memory expects one integer");
                program.memory_size = parse_int(toks[1], line_no);
            } else if (directive == ".base") {
                if (toks.size() != 2) fail(line_no, ".base expects one integer");
                program.code_base = parse_int(toks[1], line_no);
            } else if (directive == ".entry") {
                if (toks.size() != 2) fail(line_no, ".entry expects one label");
                entry_label = toks[1];
                entry_line = line_no;
            } else {
                fail(line_no, "unknown directive '" + directive + "'");
            }
            continue;
        }

        if (toks.size() == 1 && toks[0].back() == ':') {
            std::string label = toks[0].substr(0, toks[0].size() - 1);
            if (label.empty()) fail(line_no, "empty label");
            if (labels.count(label)) fail(line_no, "duplicate label '" + label + "'");
            labels[label] = static_cast<int>(program.blocks.size());
            program.blocks.push_back({});
            continue;
        }

        if (program.blocks.empty()) fail(line_no, "instruction before first label");
        const int block = static_cast<int>(program.blocks.size()) - 1;
        auto& ins_list = program.blocks.back().instructions;
        const std::string mn = upper(toks[0]);
        Instruction ins;

        if (mn == "LOADI") {
            expect_operands(toks, 2, line_no);
            ins.op = Opcode::LoadI;
            ins.rd = parse_register(toks[1], line_no);
            ins.imm = parse_int(toks[2], line_no);
        } else if (mn == "LOAD") {
            expect_operands(toks, 2, line_no);
            ins.op = Opcode::Load;
            ins.rd = parse_register(toks[1], line_no);
            ins.mem = parse_memref(toks[2], line_no);
        } else if (mn == "STORE") {
            expect_operands(toks, 2, line_no);
            ins.op = Opcode::Store;
            ins.ra = parse_register(toks[1], line_no);
            ins.mem = parse_memref(toks[2], line_no);
        } else if (mn == "MOV") {
            expect_operands(toks, 2, line_no);
            ins.op = Opcode::Mov;
            ins.rd = parse_register(toks[1], line_no);
            ins.ra = parse_register(toks[2], line_no);
        } else if (mn == "ADD" || mn == "SUB" || mn == "MUL" || mn == "DIV") {
            expect_operands(toks, 3, line_no);
            ins.op = mn == "ADD"   ? Opcode::Add
                     : mn == "SUB" ? Opcode::Sub
                     : mn == "MUL" ? Opcode::Mul
                                   : Opcode::Div;
            ins.rd = parse_register(toks[1], line_no);
            ins.ra = parse_register(toks[2], line_no);
            ins.rb = parse_register(toks[3], line_no);
        } else if (mn == "CMP") {
            expect_operands(toks, 2, line_no);
            ins.op = Opcode::Cmp;
            ins.ra = parse_register(toks[1], line_no);
            ins.rb = parse_register(toks[2], line_no);
        } else if (mn == "BR") {
            expect_operands(toks, 2, line_no);
            ins.op = Opcode::Br;
            ins.cond = parse_cond(toks[1], line_no);
            pending.push_back({block, static_cast<int>(ins_list.size()), toks[2], line_no});
        } else if (mn == "JMP") {
            expect_operands(toks, 1, line_no);
            ins.op = Opcode::Jmp;
            pending.push_back({block, static_cast<int>(ins_list.size()), toks[1], line_no});
        } else if (mn == "IN") {
            expect_operands(toks, 2, line_no);
            ins.op = Opcode::In;
            ins.rd = parse_register(toks[1], line_no);
            ins.port = static_cast<int>(parse_int(toks[2], line_no));
        } else if (mn == "OUT") {
            expect_operands(toks, 2, line_no);
            ins.op = Opcode::Out;
            ins.port = static_cast<int>(parse_int(toks[1], line_no));
            ins.ra = parse_register(toks[2], line_no);
        } else if (mn == "SLEEP") {
            expect_operands(toks, 1, line_no);
            ins.op = Opcode::Sleep;
            if (!parse_seconds(toks[1], ins.sleep_ns))
                fail(line_no, "bad duration '" + toks[1] + "'");
        } else if (mn == "NOP") {
            expect_operands(toks, 0, line_no);
            ins.op = Opcode::Nop;
        } else if (mn == "HALT") {
            expect_operands(toks, 0, line_no);
            ins.op = Opcode::Halt;
        } else {
            fail(line_no, "unknown mnemonic '" + toks[0] + "'");
        }
        ins_list.push_back(ins);
    }

    for (const auto& p : pending) {
        auto it = labels.find(p.label);
        if (it == labels.end()) fail(p.line, "undefined label '" + p.label + "'");
        program.blocks[static_cast<std::size_t>(p.block)]
            .instructions[static_cast<std::size_t>(p.offset)]
            .target = it->second;
    }
    if (!entry_label.empty()) {
        auto it = labels.find(entry_label);
        if (it == labels.end()) fail(entry_line, "undefined entry label '" + entry_label + "'");
        program.entry_block = it->second;
    }
    relayout(program);
    return program;
}

Program load_program(const std::string& path) {
    Program p = parse_asm(read_file(path));
    ValidationReport report = validate(p);
    if (!report.ok())
        throw AsmError(path + ": program failed validation:\n" + report.to_string());
    return p;
}

std::string write_asm(const Program& program) {
    std::ostringstream os;
    if (!program.meta.name.empty()) os << ".name " << program.meta.name << "\n";
    if (!program.meta.version.empty()) os << ".version " << program.meta.version << "\n";
    os << ".memory " << program.memory_size << "\n";
    if (program.code_base != kDefaultCodeBase) os << ".base " << program.code_base << "\n";
    os << ".entry L" << program.entry_block << "\n";
    for (const auto& block : program.blocks) {
        os << "\nL" << block.id << ":\n";
        for (const auto& ins : block.instructions) {
            os << "    " << mnemonic(ins.op);
            switch (ins.op) {
                case Opcode::LoadI:
                    os << " r" << ins.rd << ", " << ins.imm;
                    break;
                case Opcode::Load:
                case Opcode::Store: {
                    int reg = ins.op == Opcode::Load ? ins.rd : ins.ra;
                    os << " r" << reg << ", ";
                    if (ins.mem.reg_mode) {
                        os << "[r" << ins.mem.base;
                        if (ins.mem.disp > 0) os << "+" << ins.mem.disp;
                        if (ins.mem.disp < 0) os << "-" << -ins.mem.disp;
                        os << "]";
                    } else {
                        os << ins.mem.disp;
                    }
                    break;
                }
                case Opcode::Mov:
                    os << " r" << ins.rd << ", r" << ins.ra;
                    break;
                case Opcode::Add:
                case Opcode::Sub:
                case Opcode::Mul:
                case Opcode::Div:
                    os << " r" << ins.rd << ", r" << ins.ra << ", r" << ins.rb;
                    break;
                case Opcode::Cmp:
                    os << " r" << ins.ra << ", r" << ins.rb;
                    break;
                case Opcode::Br:
                    os << " " << cond_name(ins.cond) << ", L" << ins.target;
                    break;
                case Opcode::Jmp:
                    os << " L" << ins.target;
                    break;
                case Opcode::In:
                    os << " r" << ins.rd << ", " << ins.port;
                    break;
                case Opcode::Out:
                    os << " " << ins.port << ", r" << ins.ra;
                    break;
                case Opcode::Sleep:
                    os << " " << format_seconds(ins.sleep_ns);
                    break;
                case Opcode::Nop:
                case Opcode::Halt:
                    break;
            }
            os << "\n";
        }
    }
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw AsmError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw AsmError("cannot write " + path);
    out << content;
}

}  // namespace blocksight::vm
