public static int indexOfMax(int[] values) {
    if (values == null || values.length == 0) {
        return -1;
    }
    int best = 0;
    for (int i = 1; i < values.length; i++) {
        if (values[i] >= values[best]) {
            best = i;
        }
    }
    return best;
}
