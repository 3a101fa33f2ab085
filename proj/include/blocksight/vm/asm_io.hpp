#ifndef BLOCKSIGHT_VM_ASM_IO_HPP
#define BLOCKSIGHT_VM_ASM_IO_HPP

#include <stdexcept>
#include <string>

#include "blocksight/vm/program.hpp"

namespace blocksight::vm {

struct AsmError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses the textual assembly form. Throws AsmError with a line number on
// syntax problems; structural problems are left to validate().
Program parse_asm(const std::string& text);

// Loads and validates; throws AsmError if the file does not parse or fails
// validation.
Program load_program(const std::string& path);

// Canonical text rendering; parse_asm(write_asm(p)) reproduces p.
std::string write_asm(const Program& program);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace blocksight::vm

#endif
