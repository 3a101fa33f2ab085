#ifndef BLOCKSIGHT_CORPUS_MUTATION_HPP
#define BLOCKSIGHT_CORPUS_MUTATION_HPP

#include <string>
#include <vector>

#include "blocksight/vm/program.hpp"
#include "blocksight/vm/validate.hpp"

namespace blocksight::corpus {

// One mutation operator applied at one site produces one mutant.
enum class MutationKind : std::uint8_t {
    ArithSwap,     // ADD<->SUB, MUL<->DIV
    ConstPerturb,  // immediate +1, -1, *2, ->0
    BranchFlip,    // invert BR condition
    InstrDelete,   // replace with NOP
    AddrPerturb,   // LOAD/STORE address +1 / -1
};

const char* mutation_kind_name(MutationKind k);

struct MutationSite {
    int block = 0;
    int offset = 0;

    bool operator==(const MutationSite&) const = default;
};

struct Mutant {
    std::string id;        // m0000, assigned in enumeration order
    MutationKind kind{};
    int variant = 0;       // ConstPerturb: 0..3; AddrPerturb: 0..1
    MutationSite site;
    vm::Program program;
};

// Operator plus variant, e.g. "const_perturb:double".
std::string operator_name(MutationKind kind, int variant);

struct ExcludedMutant {
    std::string id;
    std::string op_name;
    MutationSite site;
    std::string defects;
};

struct MutantSet {
    std::vector<Mutant> valid;
    std::vector<ExcludedMutant> excluded;  // failed validation, logged
};

// Every (site, operator, variant) combination over the designated core
// blocks (all blocks when core_blocks is empty). Mutants that fail
// validation are excluded. The base program must validate.
MutantSet enumerate_mutants(const vm::Program& base, const std::vector<int>& core_blocks = {});

// Number of (operator, variant) applications a single instruction admits.
int applicable_operator_count(const vm::Instruction& ins);

}  // namespace blocksight::corpus

#endif
