#include "orthomat/matrix.hpp"

namespace orthomat {

std::string to_string(TableRole role)
{
    switch (role) {
    case TableRole::L: return "L";
    case TableRole::Pi: return "Pi";
    case TableRole::Lambda: return "Lambda";
    case TableRole::Eta: return "Eta";
    case TableRole::Tau: return "Tau";
    case TableRole::XiZeta: return "XiZeta";
    case TableRole::Other: break;
    }
    return "Other";
}

}  // namespace orthomat
