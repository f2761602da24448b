public static boolean isBlank(String text) {
    if (text == null) {
        return true;
    }
    for (int i = 0; i < text.length(); i++) {
        if (!Character.isWhitespace(text.charAt(i))) {
            return false;
        }
    }
    return true;
}
